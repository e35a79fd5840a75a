#include "ognav/local_policy.hpp"

#include "ognav/geometry.hpp"

#include <cmath>

namespace ognav {

Action next_action(const Pose& pose, std::span<const Cell> path,
                   const ActionSpec& spec, double cell_size) {
  const Vec2 position = pose.position();
  Vec2 waypoint = cell_center(path.back(), cell_size);
  for (const Cell& c : path) {
    const Vec2 center = cell_center(c, cell_size);
    if ((center - position).norm() >= spec.forward_step) {
      waypoint = center;
      break;
    }
  }

  const Vec2 to_waypoint = waypoint - position;
  if (to_waypoint.norm() < 1e-9) return Action::Forward;

  const double heading = std::atan2(to_waypoint.y(), to_waypoint.x());
  const double err = angle_error(heading, pose.theta);  // in (-pi, pi]
  if (std::abs(err) > spec.turn_angle / 2.0)
    return err > 0.0 ? Action::TurnLeft : Action::TurnRight;
  return Action::Forward;
}

}  // namespace ognav
