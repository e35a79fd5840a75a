#include "ognav/world.hpp"

#include "ognav/geometry.hpp"

#include <algorithm>
#include <set>

namespace ognav {

namespace {

/// True if the segment from `from` to `to` enters any obstacle cell.
bool segment_blocked(const Environment& env, const Vec2& from, const Vec2& to) {
  const Vec2 delta = to - from;
  const double len = delta.norm();
  bool blocked = false;
  if (len <= 0.0) return false;
  traverse_grid(from, delta / len, len, env.cell_size(),
                [&](const Cell& c, double) {
                  if (!env.in_bounds(c) || env.is_obstacle(c)) {
                    blocked = true;
                    return false;
                  }
                  return true;
                });
  return blocked;
}

}  // namespace

StepResult step(const Environment& env, const Pose& pose, Action action,
                const ActionSpec& spec) {
  switch (action) {
    case Action::TurnLeft:
      return {{pose.x, pose.y, wrap_angle(pose.theta + spec.turn_angle)}, true};
    case Action::TurnRight:
      return {{pose.x, pose.y, wrap_angle(pose.theta - spec.turn_angle)}, true};
    case Action::Stop:
      return {pose, false};
    case Action::Forward: {
      const Vec2 from = pose.position();
      const Vec2 to = from + spec.forward_step * Vec2{std::cos(pose.theta),
                                                      std::sin(pose.theta)};
      const Cell dest = cell_of(to, env.cell_size());
      if (!env.in_bounds(dest) || env.is_obstacle(dest) ||
          segment_blocked(env, from, to))
        return {pose, false};
      return {{to.x(), to.y(), pose.theta}, true};
    }
  }
  return {pose, false};
}

Observation observe(const Environment& env, const Pose& pose,
                    const SensorConfig& sensor, Rng& rng) {
  Observation obs;
  obs.pose = pose;
  obs.depths.reserve(sensor.n_rays);
  obs.visible.reserve(64);

  std::set<Cell> seen;
  auto record = [&](const Cell& c, CellState s) {
    if (seen.insert(c).second) obs.visible.push_back({c, s});
  };

  const Vec2 origin = pose.position();
  const double h = env.cell_size();
  for (int i = 0; i < sensor.n_rays; ++i) {
    const double angle =
        pose.theta - sensor.fov / 2.0 +
        sensor.fov * (sensor.n_rays > 1 ? static_cast<double>(i) / (sensor.n_rays - 1) : 0.5);
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    double depth = sensor.max_range;
    traverse_grid(origin, dir, sensor.max_range, h, [&](const Cell& c, double t) {
      if (!env.in_bounds(c)) {
        depth = t;
        return false;
      }
      if (env.is_obstacle(c)) {
        depth = t;
        record(c, CellState::Obstacle);
        return false;
      }
      record(c, CellState::Free);
      return true;
    });
    obs.depths.push_back(depth);
  }

  // Semantic channel. Draw order is fixed: object hits in visibility
  // order, then the false-positive slot, then room reports.
  std::vector<Cell> free_cells;
  for (const auto& vc : obs.visible)
    if (vc.state == CellState::Free) free_cells.push_back(vc.cell);

  for (const Cell& c : free_cells) {
    const std::string label = env.object_label(c);
    if (label.empty()) continue;
    if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < sensor.det_tp)
      obs.object_reports.push_back({label, c});
  }

  if (!free_cells.empty() && !env.object_vocab().empty() &&
      std::uniform_real_distribution<double>(0.0, 1.0)(rng) < sensor.det_fp) {
    const auto cell_idx = std::uniform_int_distribution<std::size_t>(
        0, free_cells.size() - 1)(rng);
    const auto label_idx = std::uniform_int_distribution<std::size_t>(
        0, env.object_vocab().size() - 1)(rng);
    obs.object_reports.push_back(
        {env.object_vocab()[label_idx], free_cells[cell_idx]});
  }

  const auto& rooms = env.room_vocab();
  for (const Cell& c : free_cells) {
    const int true_id = env.room_id(c);
    if (true_id < 0) continue;
    int reported = true_id;
    if (rooms.size() > 1 &&
        std::uniform_real_distribution<double>(0.0, 1.0)(rng) >= sensor.room_acc) {
      // wrong label, uniform over the others
      auto off = std::uniform_int_distribution<std::size_t>(0, rooms.size() - 2)(rng);
      reported = static_cast<int>(off >= static_cast<std::size_t>(true_id) ? off + 1 : off);
    }
    obs.room_reports.push_back({rooms[reported], c});
  }

  return obs;
}

}  // namespace ognav
