#include "ognav/metrics.hpp"

#include <algorithm>

namespace ognav {

double EpisodeResult::spl() const {
  if (!success) return 0.0;
  if (shortest_path <= 0.0) return 1.0;  // started inside the success region
  return shortest_path / std::max(path_length, shortest_path);
}

RunReport compute_metrics(std::span<const EpisodeResult> results) {
  RunReport report;
  report.episodes = static_cast<int>(results.size());
  if (results.empty()) return report;

  int successes = 0, detection = 0, planning = 0, exploration = 0;
  double spl_sum = 0.0, dist_sum = 0.0;
  long decisions = 0;
  for (const EpisodeResult& r : results) {
    successes += r.success ? 1 : 0;
    spl_sum += r.spl();
    switch (r.error_class) {
      case ErrorClass::Detection: ++detection; break;
      case ErrorClass::Planning: ++planning; break;
      case ErrorClass::Exploration: ++exploration; break;
      case ErrorClass::None: break;
    }
    dist_sum += r.frontier_dist_sum;
    decisions += r.frontier_decisions;
  }
  const double n = static_cast<double>(results.size());
  report.sr = 100.0 * successes / n;
  report.spl = 100.0 * spl_sum / n;
  report.detection_pct = 100.0 * detection / n;
  report.planning_pct = 100.0 * planning / n;
  report.exploration_pct = 100.0 * exploration / n;
  report.mean_frontier_dist = decisions > 0 ? dist_sum / decisions : 0.0;
  return report;
}

}  // namespace ognav
