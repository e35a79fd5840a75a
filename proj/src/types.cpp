#include "ognav/types.hpp"

#include "ognav/error.hpp"

namespace ognav {

const char* to_string(Action a) {
  switch (a) {
    case Action::Forward: return "forward";
    case Action::TurnLeft: return "turn_left";
    case Action::TurnRight: return "turn_right";
    case Action::Stop: return "stop";
  }
  return "?";
}

const char* to_string(CellState s) {
  switch (s) {
    case CellState::Unknown: return "unknown";
    case CellState::Free: return "free";
    case CellState::Obstacle: return "obstacle";
  }
  return "?";
}

void ActionSpec::validate() const {
  if (!(forward_step > 0.0))
    throw ConfigError("actions.forward_step must be > 0");
  if (!(turn_angle > 0.0 && turn_angle <= M_PI))
    throw ConfigError("actions.turn_angle must be in (0, pi]");
}

void SensorConfig::validate() const {
  auto prob = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ConfigError(std::string("sensor.") + name + " must be in [0, 1]");
  };
  prob(det_tp, "det_tp");
  prob(det_fp, "det_fp");
  prob(room_acc, "room_acc");
  if (!(max_range > 0.0)) throw ConfigError("sensor.max_range must be > 0");
  if (n_rays < 3) throw ConfigError("sensor.n_rays must be >= 3");
  if (!(fov > 0.0 && fov <= 2.0 * M_PI))
    throw ConfigError("sensor.fov must be in (0, 2*pi]");
}

}  // namespace ognav
