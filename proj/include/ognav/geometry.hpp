#pragma once

#include "ognav/types.hpp"

#include <cmath>
#include <limits>

namespace ognav {

inline double wrap_angle(double theta) {
  theta = std::fmod(theta, 2.0 * M_PI);
  if (theta < 0.0) theta += 2.0 * M_PI;
  if (theta >= 2.0 * M_PI) theta = 0.0;  // rounding at the seam
  return theta;
}

/// Signed angular difference target - theta, wrapped into (-pi, pi].
inline double angle_error(double target, double theta) {
  double d = std::fmod(target - theta, 2.0 * M_PI);
  if (d <= -M_PI) d += 2.0 * M_PI;
  if (d > M_PI) d -= 2.0 * M_PI;
  return d;
}

inline Cell cell_of(const Vec2& p, double cell_size) {
  return {static_cast<int>(std::floor(p.x() / cell_size)),
          static_cast<int>(std::floor(p.y() / cell_size))};
}

inline Vec2 cell_center(const Cell& c, double cell_size) {
  return {(c.x + 0.5) * cell_size, (c.y + 0.5) * cell_size};
}

/// Amanatides-Woo grid traversal along origin + t*dir, t in [0, max_t].
/// Visits (cell, t_entry) in order, starting at the origin cell with t=0.
/// The visitor returns false to stop early. When the ray crosses a cell
/// corner exactly, the x step is taken first; both side cells are visited.
template <typename Visitor>
void traverse_grid(const Vec2& origin, const Vec2& dir, double max_t,
                   double cell_size, Visitor&& visit) {
  const double inf = std::numeric_limits<double>::infinity();
  int cx = static_cast<int>(std::floor(origin.x() / cell_size));
  int cy = static_cast<int>(std::floor(origin.y() / cell_size));

  const int step_x = dir.x() > 0.0 ? 1 : (dir.x() < 0.0 ? -1 : 0);
  const int step_y = dir.y() > 0.0 ? 1 : (dir.y() < 0.0 ? -1 : 0);

  double t_max_x = inf, t_max_y = inf, t_delta_x = inf, t_delta_y = inf;
  if (step_x != 0) {
    const double edge = (step_x > 0 ? (cx + 1) : cx) * cell_size;
    t_max_x = (edge - origin.x()) / dir.x();
    t_delta_x = cell_size / std::abs(dir.x());
  }
  if (step_y != 0) {
    const double edge = (step_y > 0 ? (cy + 1) : cy) * cell_size;
    t_max_y = (edge - origin.y()) / dir.y();
    t_delta_y = cell_size / std::abs(dir.y());
  }

  if (!visit(Cell{cx, cy}, 0.0)) return;
  while (true) {
    double t;
    if (t_max_x <= t_max_y) {
      t = t_max_x;
      cx += step_x;
      t_max_x += t_delta_x;
    } else {
      t = t_max_y;
      cy += step_y;
      t_max_y += t_delta_y;
    }
    if (t > max_t) return;
    if (!visit(Cell{cx, cy}, t)) return;
  }
}

}  // namespace ognav
