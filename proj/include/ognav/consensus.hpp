#pragma once

#include "ognav/rng.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ognav {

enum class ConsensusTier { Unanimous, Partial, Fallback };

const char* to_string(ConsensusTier tier);

/// Full record of one consensus decision, also the audit payload.
struct ConsensusOutcome {
  ConsensusTier tier = ConsensusTier::Fallback;
  std::set<int> consensus_set;           // empty on Fallback
  int chosen = -1;
  std::map<int, double> distances_used;  // id -> geodesic meters
};

/// Tier logic only, pure set algebra: unanimous triple intersection,
/// else the union of pairwise intersections, else fallback with an empty set.
std::pair<ConsensusTier, std::set<int>> find_consensus(const std::set<int>& s1,
                                                       const std::set<int>& s2,
                                                       const std::set<int>& s3);

/// Nearest frontier within the consensus set (all candidates on
/// Fallback); distance ties resolve to the smaller id. nullopt when
/// candidates is empty ("exploration exhausted").
std::optional<int> select_frontier(const std::set<int>& consensus_set,
                                   ConsensusTier tier,
                                   const std::vector<int>& candidates,
                                   const std::map<int, double>& distances);

/// find_consensus + select_frontier in one call.
std::optional<ConsensusOutcome> cdm_decide(const std::set<int>& s1,
                                           const std::set<int>& s2,
                                           const std::set<int>& s3,
                                           const std::vector<int>& candidates,
                                           const std::map<int, double>& distances);

using StochasticExpert = std::function<std::set<int>(Rng&)>;

/// Single-expert baseline: sample the expert k times and take the most
/// frequent id; frequency ties go to the nearer frontier, then the
/// smaller id. All-empty samples fall back to the closest frontier.
std::optional<int> majority_vote_baseline(const StochasticExpert& expert, int k,
                                          const std::vector<int>& candidates,
                                          const std::map<int, double>& distances,
                                          Rng& rng);

/// Nearest-frontier baseline; ties resolve to the smaller id.
std::optional<int> closest_frontier_baseline(
    const std::vector<int>& candidates, const std::map<int, double>& distances);

}  // namespace ognav
