#pragma once

#include "ognav/belief_map.hpp"
#include "ognav/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ognav {

struct FmmOptions {
  /// Treat Unknown cells as traversable. On for goal-reaching fields
  /// (frontiers sit on the unknown boundary), off for distance reporting.
  bool unknown_traversable = false;
  /// Block cells 8-adjacent to an Obstacle. On for planning fields.
  bool inflate_obstacles = false;
  /// Cells kept traversable regardless of inflation (e.g. the cells
  /// around the agent, which may legally hug a wall).
  std::vector<Cell> force_traversable;
};

/// Arrival-distance field from a set of goal cells, unit speed.
/// Infinity marks unreached or non-traversable cells.
struct DistanceField {
  GridD values;          // meters; +inf where unreached
  GridU8 traversable;    // mask used by the solve and by path descent
  std::vector<Cell> goals;
  double cell_size = 0.0;

  double at(const Cell& c) const { return values(c.y, c.x); }
  bool reachable(const Cell& c) const { return std::isfinite(at(c)); }
  bool is_traversable(const Cell& c) const { return traversable(c.y, c.x) != 0; }
  bool in_bounds(const Cell& c) const {
    return c.x >= 0 && c.x < values.cols() && c.y >= 0 && c.y < values.rows();
  }
};

/// First-order upwind fast marching on the belief map. The update stencil
/// couples the axis pair and the diagonal pair (grid spacing h and h*sqrt2),
/// so field values never exceed the 8-connected shortest-path length while
/// staying at or above Euclidean distance. Diagonal information is only
/// used when both adjacent orthogonal cells are traversable (no corner
/// cutting). Goal cells are always traversable. Throws ConfigError when
/// goal_cells is empty.
DistanceField fmm_field(const BeliefMap& map, const std::vector<Cell>& goal_cells,
                        const FmmOptions& options = {});

/// Greedy descent from start to a goal cell: at each step move to the
/// 8-neighbor with the smallest field value strictly below the current
/// one; diagonal steps require both adjacent orthogonal cells traversable.
/// Returns nullopt ("stuck") if no strictly descending neighbor exists
/// before a goal cell is reached.
std::optional<std::vector<Cell>> extract_path(const DistanceField& field,
                                              const Cell& start);

/// Geodesic distance through known free space (unknown non-traversable,
/// no inflation). nullopt when unreachable.
std::optional<double> geodesic_distance(const BeliefMap& map, const Cell& from,
                                        const std::vector<Cell>& to_cells);

/// CSV matrix export, one grid row per line, infinity as an empty cell.
std::string field_to_csv(const DistanceField& field);

}  // namespace ognav
