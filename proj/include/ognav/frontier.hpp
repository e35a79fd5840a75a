#pragma once

#include "ognav/belief_map.hpp"
#include "ognav/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ognav {

/// One 8-connected cluster of free cells bordering unknown space.
struct Frontier {
  int id = 0;
  std::vector<Cell> cells;   // sorted row-major
  Vec2 centroid{0.0, 0.0};   // meters, mean of cell centers

  int size() const { return static_cast<int>(cells.size()); }
};

/// Semantic neighborhood of a frontier, the input handed to experts.
struct FrontierContext {
  int frontier_id = 0;
  std::vector<std::pair<std::string, int>> nearby_objects;  // sorted by label
  std::string room_label = "unknown";
  double local_density = 0.0;
};

/// All maximal 8-connected frontier clusters of at least
/// min_frontier_size cells. Ids are assigned in row-major order of each
/// cluster's smallest cell, starting at 0.
std::vector<Frontier> extract_frontiers(const BeliefMap& map,
                                        int min_frontier_size);

FrontierContext frontier_context(const BeliefMap& map, const Frontier& f,
                                 double context_radius);

/// The frontier cell nearest the centroid (ties: row-major smallest).
/// Used as the frontier's representative for distance queries.
Cell representative_cell(const Frontier& f, double cell_size);

}  // namespace ognav
