#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace ognav {

using Vec2 = Eigen::Vector2d;

// Dense grid storage, indexed (y, x) with rows = height, cols = width.
template <typename Scalar>
using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using GridU8 = Grid<std::uint8_t>;
using GridI32 = Grid<std::int32_t>;
using GridD = Grid<double>;

/// Integer grid cell. Ordering is row-major (y first) so that the
/// "smallest" cell of a set is the row-major minimum.
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Cell& a, const Cell& b) { return !(a == b); }
  friend bool operator<(const Cell& a, const Cell& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
};

enum class CellState : std::uint8_t { Unknown = 0, Free = 1, Obstacle = 2 };

enum class Action : std::uint8_t { Forward = 0, TurnLeft, TurnRight, Stop };

const char* to_string(Action a);
const char* to_string(CellState s);

/// Continuous agent pose. theta is kept in [0, 2*pi), 0 along +x.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 position() const { return {x, y}; }
};

struct ActionSpec {
  double forward_step = 0.25;        // meters
  double turn_angle = M_PI / 6.0;    // radians

  void validate() const;
};

/// Simulated RGB-D + detector stand-in. Probabilities parameterize the
/// noisy semantic channel; geometry (depth, visibility) is noise-free.
struct SensorConfig {
  double fov = M_PI / 2.0;       // radians, centered on heading
  double max_range = 5.0;        // meters
  int n_rays = 60;
  double det_tp = 0.95;          // chance a visible true object is reported
  double det_fp = 0.02;          // chance of one spurious report per observation
  double room_acc = 0.95;        // chance a visible cell's room label is correct

  void validate() const;
};

}  // namespace ognav
