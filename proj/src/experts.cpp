#include "ognav/experts.hpp"

#include "ognav/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ognav {

void SleWeights::validate() const {
  if (std::abs(w_obj + w_room + w_density - 1.0) > 1e-9)
    throw ConfigError("sle weights must sum to 1");
  if (w_obj < 0.0 || w_room < 0.0 || w_density < 0.0)
    throw ConfigError("sle weights must be non-negative");
}

double o2f_score(const AffinityTable& table, const std::string& target,
                 const FrontierContext& ctx) {
  double best = 0.0;
  for (const auto& [label, count] : ctx.nearby_objects)
    best = std::max(best, table.object_score(label, target));
  return best;
}

double r2f_score(const AffinityTable& table, const std::string& target,
                 const FrontierContext& ctx) {
  if (ctx.room_label == "unknown") return table.default_score;
  return table.room_score(ctx.room_label, target);
}

double sle_score(const AffinityTable& table, const std::string& target,
                 const FrontierContext& ctx, const SleWeights& weights) {
  return weights.w_obj * o2f_score(table, target, ctx) +
         weights.w_room * r2f_score(table, target, ctx) +
         weights.w_density * ctx.local_density;
}

namespace {

/// Threshold + top-k selection over (id, score); score ties keep the
/// smaller id.
ExpertRecommendation select_by_score(
    std::string name, std::vector<std::pair<int, double>> scored,
    double threshold, int top_k) {
  ExpertRecommendation rec{std::move(name), {}};
  std::erase_if(scored, [&](const auto& p) { return p.second < threshold; });
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (top_k >= 0 && static_cast<int>(scored.size()) > top_k)
    scored.resize(top_k);
  for (const auto& [id, score] : scored) rec.frontier_ids.insert(id);
  return rec;
}

template <typename ScoreFn>
ExpertRecommendation recommend(const std::string& name,
                               const std::vector<FrontierContext>& contexts,
                               double threshold, int top_k, ScoreFn&& score) {
  std::vector<std::pair<int, double>> scored;
  scored.reserve(contexts.size());
  for (const FrontierContext& ctx : contexts)
    scored.emplace_back(ctx.frontier_id, score(ctx));
  return select_by_score(name, std::move(scored), threshold, top_k);
}

}  // namespace

ExpertRecommendation o2f_recommend(const AffinityTable& table,
                                   const std::string& target,
                                   const std::vector<FrontierContext>& contexts,
                                   double threshold, int top_k) {
  return recommend("o2f", contexts, threshold, top_k, [&](const auto& ctx) {
    return o2f_score(table, target, ctx);
  });
}

ExpertRecommendation r2f_recommend(const AffinityTable& table,
                                   const std::string& target,
                                   const std::vector<FrontierContext>& contexts,
                                   double threshold, int top_k) {
  return recommend("r2f", contexts, threshold, top_k, [&](const auto& ctx) {
    return r2f_score(table, target, ctx);
  });
}

ExpertRecommendation sle_recommend(const AffinityTable& table,
                                   const std::string& target,
                                   const std::vector<FrontierContext>& contexts,
                                   const SleWeights& weights, double threshold,
                                   int top_k) {
  weights.validate();
  return recommend("sle", contexts, threshold, top_k, [&](const auto& ctx) {
    return sle_score(table, target, ctx, weights);
  });
}

namespace {

int best_frontier(const std::map<int, double>& goal_distances) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& [id, d] : goal_distances)
    if (d < best_d) {
      best_d = d;
      best = id;
    }
  return best;
}

}  // namespace

ExpertRecommendation noisy_oracle_recommend(
    const std::map<int, double>& goal_distances, double p, Rng& rng) {
  ExpertRecommendation rec{"oracle", {}};
  if (goal_distances.empty()) return rec;
  const int best = best_frontier(goal_distances);
  const bool correct =
      std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  if (correct || goal_distances.size() == 1) {
    rec.frontier_ids.insert(best);
    return rec;
  }
  std::vector<int> others;
  for (const auto& [id, d] : goal_distances)
    if (id != best) others.push_back(id);
  const auto pick =
      std::uniform_int_distribution<std::size_t>(0, others.size() - 1)(rng);
  rec.frontier_ids.insert(others[pick]);
  return rec;
}

std::array<ExpertRecommendation, 3> noisy_oracle_bank(
    const std::map<int, double>& goal_distances, double p, Rng& rng) {
  std::array<ExpertRecommendation, 3> out;
  const char* names[3] = {"oracle_1", "oracle_2", "oracle_3"};
  if (goal_distances.empty()) {
    for (int i = 0; i < 3; ++i) out[i].expert_name = names[i];
    return out;
  }
  const int best = best_frontier(goal_distances);
  std::vector<int> unused_wrong;
  for (const auto& [id, d] : goal_distances)
    if (id != best) unused_wrong.push_back(id);

  for (int i = 0; i < 3; ++i) {
    out[i].expert_name = names[i];
    const bool correct =
        std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    if (correct || unused_wrong.empty()) {
      out[i].frontier_ids.insert(best);
      continue;
    }
    const auto pick = std::uniform_int_distribution<std::size_t>(
        0, unused_wrong.size() - 1)(rng);
    out[i].frontier_ids.insert(unused_wrong[pick]);
    unused_wrong.erase(unused_wrong.begin() + static_cast<long>(pick));
  }
  return out;
}

}  // namespace ognav
