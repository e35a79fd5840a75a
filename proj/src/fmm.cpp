#include "ognav/fmm.hpp"

#include "ognav/error.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace ognav {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class NodeState : std::uint8_t { Far, Narrow, Accepted };

struct HeapEntry {
  double value;
  int index;  // y * width + x
  bool operator>(const HeapEntry& o) const {
    return value != o.value ? value > o.value : index > o.index;
  }
};

/// Solve the two-axis upwind quadratic (max(U-a,0)/s)^2 + (max(U-b,0)/s)^2 = 1
/// for the smaller upwind pair values a, b and spacing s. Either may be inf.
double upwind_solve(double a, double b, double s) {
  if (a > b) std::swap(a, b);
  if (!std::isfinite(a)) return kInf;
  if (!std::isfinite(b) || b - a >= s) return a + s;
  const double sum = a + b;
  const double diff = b - a;
  return 0.5 * (sum + std::sqrt(2.0 * s * s - diff * diff));
}

}  // namespace

DistanceField fmm_field(const BeliefMap& map, const std::vector<Cell>& goal_cells,
                        const FmmOptions& options) {
  if (goal_cells.empty())
    throw ConfigError("fmm_field: goal cell set must not be empty");

  const int w = map.width(), h = map.height();
  const double spacing = map.cell_size();
  const double diag_spacing = spacing * std::sqrt(2.0);

  DistanceField field;
  field.cell_size = spacing;
  field.goals = goal_cells;
  field.values = GridD::Constant(h, w, kInf);
  field.traversable = GridU8::Zero(h, w);

  auto obstacle = [&](int x, int y) {
    return map.state({x, y}) == CellState::Obstacle;
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const CellState s = map.state({x, y});
      bool ok = s == CellState::Free ||
                (s == CellState::Unknown && options.unknown_traversable);
      if (ok && options.inflate_obstacles) {
        for (int dy = -1; dy <= 1 && ok; ++dy)
          for (int dx = -1; dx <= 1 && ok; ++dx) {
            const int nx = x + dx, ny = y + dy;
            if (nx >= 0 && nx < w && ny >= 0 && ny < h && obstacle(nx, ny))
              ok = false;
          }
      }
      field.traversable(y, x) = ok ? 1 : 0;
    }
  for (const Cell& c : options.force_traversable)
    if (field.in_bounds(c) && !obstacle(c.x, c.y)) field.traversable(c.y, c.x) = 1;
  for (const Cell& c : goal_cells) {
    if (!field.in_bounds(c))
      throw ConfigError("fmm_field: goal cell outside the map");
    if (!obstacle(c.x, c.y)) field.traversable(c.y, c.x) = 1;
  }

  std::vector<NodeState> state(static_cast<std::size_t>(w) * h, NodeState::Far);
  auto index = [w](int x, int y) { return y * w + x; };

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  for (const Cell& c : goal_cells) {
    if (!field.is_traversable(c)) continue;
    field.values(c.y, c.x) = 0.0;
    state[index(c.x, c.y)] = NodeState::Narrow;
    heap.push({0.0, index(c.x, c.y)});
  }

  auto accepted_value = [&](int x, int y) {
    if (x < 0 || x >= w || y < 0 || y >= h) return kInf;
    if (state[index(x, y)] != NodeState::Accepted) return kInf;
    return field.values(y, x);
  };
  auto traversable_at = [&](int x, int y) {
    return x >= 0 && x < w && y >= 0 && y < h && field.traversable(y, x) != 0;
  };

  // Tentative value for (x, y) from accepted neighbors: the axis stencil,
  // the 45-degree rotated stencil, and direct diagonal relaxation. Using a
  // diagonal neighbor requires both adjacent orthogonal cells traversable.
  auto compute = [&](int x, int y) {
    const double ax = std::min(accepted_value(x - 1, y), accepted_value(x + 1, y));
    const double ay = std::min(accepted_value(x, y - 1), accepted_value(x, y + 1));
    double best = upwind_solve(ax, ay, spacing);
    best = std::min(best, std::min(ax, ay) + spacing);

    auto diag = [&](int dx, int dy) {
      if (!traversable_at(x + dx, y) || !traversable_at(x, y + dy)) return kInf;
      return accepted_value(x + dx, y + dy);
    };
    const double d1 = std::min(diag(-1, -1), diag(1, 1));
    const double d2 = std::min(diag(-1, 1), diag(1, -1));
    best = std::min(best, upwind_solve(d1, d2, diag_spacing));
    best = std::min(best, std::min(d1, d2) + diag_spacing);
    return best;
  };

  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    heap.pop();
    const int x = top.index % w, y = top.index / w;
    if (state[top.index] == NodeState::Accepted) continue;
    if (top.value > field.values(y, x)) continue;  // stale entry
    state[top.index] = NodeState::Accepted;

    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = x + dx, ny = y + dy;
        if (!traversable_at(nx, ny)) continue;
        if (state[index(nx, ny)] == NodeState::Accepted) continue;
        const double v = compute(nx, ny);
        if (v < field.values(ny, nx)) {
          field.values(ny, nx) = v;
          state[index(nx, ny)] = NodeState::Narrow;
          heap.push({v, index(nx, ny)});
        }
      }
  }

  return field;
}

std::optional<std::vector<Cell>> extract_path(const DistanceField& field,
                                              const Cell& start) {
  if (!field.in_bounds(start) || !field.reachable(start)) return std::nullopt;

  std::vector<Cell> path{start};
  Cell cur = start;
  const long cap = field.values.rows() * field.values.cols();
  for (long step = 0; step < cap; ++step) {
    if (field.at(cur) == 0.0) return path;
    const double here = field.at(cur);
    Cell best = cur;
    double best_v = here;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const Cell n{cur.x + dx, cur.y + dy};
        if (!field.in_bounds(n) || !field.is_traversable(n)) continue;
        if (dx != 0 && dy != 0) {
          const Cell ox{cur.x + dx, cur.y}, oy{cur.x, cur.y + dy};
          if (!field.in_bounds(ox) || !field.is_traversable(ox) ||
              !field.in_bounds(oy) || !field.is_traversable(oy))
            continue;
        }
        const double v = field.at(n);
        if (v < best_v || (v == best_v && best != cur && n < best)) {
          best_v = v;
          best = n;
        }
      }
    if (best == cur) return std::nullopt;  // no strict descent: stuck
    cur = best;
    path.push_back(cur);
  }
  return std::nullopt;
}

std::optional<double> geodesic_distance(const BeliefMap& map, const Cell& from,
                                        const std::vector<Cell>& to_cells) {
  if (to_cells.empty()) return std::nullopt;
  const DistanceField field = fmm_field(map, to_cells, FmmOptions{});
  if (!field.in_bounds(from) || !field.reachable(from)) return std::nullopt;
  return field.at(from);
}

std::string field_to_csv(const DistanceField& field) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index y = 0; y < field.values.rows(); ++y) {
    for (Eigen::Index x = 0; x < field.values.cols(); ++x) {
      if (x > 0) out << ',';
      const double v = field.values(y, x);
      if (std::isfinite(v)) out << v;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ognav
