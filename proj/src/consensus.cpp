#include "ognav/consensus.hpp"

#include <algorithm>
#include <limits>

namespace ognav {

const char* to_string(ConsensusTier tier) {
  switch (tier) {
    case ConsensusTier::Unanimous: return "unanimous";
    case ConsensusTier::Partial: return "partial";
    case ConsensusTier::Fallback: return "fallback";
  }
  return "?";
}

namespace {

std::set<int> intersect(const std::set<int>& a, const std::set<int>& b) {
  std::set<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

/// Nearest id by distance, ties to the smaller id. ids must be non-empty
/// and present in distances.
int nearest(const std::set<int>& ids, const std::map<int, double>& distances) {
  int best = *ids.begin();
  double best_d = std::numeric_limits<double>::infinity();
  for (int id : ids) {
    auto it = distances.find(id);
    const double d = it == distances.end()
                         ? std::numeric_limits<double>::infinity()
                         : it->second;
    if (d < best_d) {
      best_d = d;
      best = id;
    }
  }
  return best;
}

}  // namespace

std::pair<ConsensusTier, std::set<int>> find_consensus(const std::set<int>& s1,
                                                       const std::set<int>& s2,
                                                       const std::set<int>& s3) {
  std::set<int> unanimous = intersect(intersect(s1, s2), s3);
  if (!unanimous.empty()) return {ConsensusTier::Unanimous, std::move(unanimous)};

  std::set<int> partial;
  for (const auto& pair : {intersect(s1, s2), intersect(s1, s3), intersect(s2, s3)})
    partial.insert(pair.begin(), pair.end());
  if (!partial.empty()) return {ConsensusTier::Partial, std::move(partial)};

  return {ConsensusTier::Fallback, {}};
}

std::optional<int> select_frontier(const std::set<int>& consensus_set,
                                   ConsensusTier tier,
                                   const std::vector<int>& candidates,
                                   const std::map<int, double>& distances) {
  if (candidates.empty()) return std::nullopt;
  std::set<int> pool;
  if (tier != ConsensusTier::Fallback) {
    for (int id : consensus_set)
      if (std::find(candidates.begin(), candidates.end(), id) != candidates.end())
        pool.insert(id);
  }
  if (pool.empty()) pool.insert(candidates.begin(), candidates.end());
  return nearest(pool, distances);
}

std::optional<ConsensusOutcome> cdm_decide(const std::set<int>& s1,
                                           const std::set<int>& s2,
                                           const std::set<int>& s3,
                                           const std::vector<int>& candidates,
                                           const std::map<int, double>& distances) {
  auto [tier, consensus_set] = find_consensus(s1, s2, s3);
  auto chosen = select_frontier(consensus_set, tier, candidates, distances);
  if (!chosen) return std::nullopt;
  ConsensusOutcome outcome;
  outcome.tier = tier;
  outcome.consensus_set = std::move(consensus_set);
  outcome.chosen = *chosen;
  outcome.distances_used = distances;
  return outcome;
}

std::optional<int> majority_vote_baseline(const StochasticExpert& expert, int k,
                                          const std::vector<int>& candidates,
                                          const std::map<int, double>& distances,
                                          Rng& rng) {
  if (candidates.empty()) return std::nullopt;
  std::map<int, int> counts;
  for (int i = 0; i < k; ++i)
    for (int id : expert(rng)) counts[id]++;
  if (counts.empty()) return closest_frontier_baseline(candidates, distances);

  int top_count = 0;
  for (const auto& [id, n] : counts) top_count = std::max(top_count, n);
  std::set<int> tied;
  for (const auto& [id, n] : counts)
    if (n == top_count) tied.insert(id);
  return nearest(tied, distances);
}

std::optional<int> closest_frontier_baseline(
    const std::vector<int>& candidates, const std::map<int, double>& distances) {
  if (candidates.empty()) return std::nullopt;
  std::set<int> pool(candidates.begin(), candidates.end());
  return nearest(pool, distances);
}

}  // namespace ognav
