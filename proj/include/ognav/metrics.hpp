#pragma once

#include "ognav/episode.hpp"

#include <span>

namespace ognav {

/// Aggregate metrics over a batch of episodes. SR and SPL in percent.
struct RunReport {
  int episodes = 0;
  double sr = 0.0;
  double spl = 0.0;
  double detection_pct = 0.0;
  double planning_pct = 0.0;
  double exploration_pct = 0.0;
  double mean_frontier_dist = 0.0;  // meters over all frontier decisions
};

RunReport compute_metrics(std::span<const EpisodeResult> results);

}  // namespace ognav
