#pragma once

#include "ognav/affinity.hpp"
#include "ognav/frontier.hpp"
#include "ognav/rng.hpp"
#include "ognav/types.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ognav {

/// One expert's selected frontier ids. May be empty; consensus absorbs it.
struct ExpertRecommendation {
  std::string expert_name;
  std::set<int> frontier_ids;
};

struct SleWeights {
  double w_obj = 0.4;
  double w_room = 0.4;
  double w_density = 0.2;

  /// Weights must sum to 1. Throws ConfigError.
  void validate() const;
};

// Per-frontier scores, exposed for tests and for the SLE combination.
double o2f_score(const AffinityTable& table, const std::string& target,
                 const FrontierContext& ctx);
double r2f_score(const AffinityTable& table, const std::string& target,
                 const FrontierContext& ctx);
double sle_score(const AffinityTable& table, const std::string& target,
                 const FrontierContext& ctx, const SleWeights& weights);

/// Object-cue expert: a frontier scores the best affinity among its
/// nearby objects. Ids scoring >= threshold are kept, capped at top_k by
/// score (ties resolve to the smaller id).
ExpertRecommendation o2f_recommend(const AffinityTable& table,
                                   const std::string& target,
                                   const std::vector<FrontierContext>& contexts,
                                   double threshold, int top_k);

/// Room-cue expert: scores the frontier's room label ("unknown" scores
/// the table default).
ExpertRecommendation r2f_recommend(const AffinityTable& table,
                                   const std::string& target,
                                   const std::vector<FrontierContext>& contexts,
                                   double threshold, int top_k);

/// Scene-layout expert: weighted blend of object score, room score and
/// local object density.
ExpertRecommendation sle_recommend(const AffinityTable& table,
                                   const std::string& target,
                                   const std::vector<FrontierContext>& contexts,
                                   const SleWeights& weights, double threshold,
                                   int top_k);

/// Instrumented expert for reliability experiments: with probability p
/// returns the frontier with minimal true goal distance, otherwise a
/// uniformly random other frontier. goal_distances maps frontier id to
/// ground-truth geodesic distance from the frontier to the target.
ExpertRecommendation noisy_oracle_recommend(
    const std::map<int, double>& goal_distances, double p, Rng& rng);

/// Three noisy oracles drawn together, wrong answers sampled without
/// replacement so that disagreeing experts name distinct wrong frontiers.
std::array<ExpertRecommendation, 3> noisy_oracle_bank(
    const std::map<int, double>& goal_distances, double p, Rng& rng);

}  // namespace ognav
