#pragma once

#include "ognav/environment.hpp"
#include "ognav/rng.hpp"
#include "ognav/types.hpp"

#include <string>
#include <vector>

namespace ognav {

struct StepResult {
  Pose pose;
  bool moved = false;
};

struct VisibleCell {
  Cell cell;
  CellState state = CellState::Free;
};

struct SemanticReport {
  std::string label;
  Cell cell;
};

/// One sensing snapshot. Geometry (depths, visible cells) is exact;
/// object/room reports carry the configured detector noise.
struct Observation {
  Pose pose;
  std::vector<double> depths;            // per ray, <= max_range
  std::vector<VisibleCell> visible;      // deduplicated, ray order
  std::vector<SemanticReport> object_reports;
  std::vector<SemanticReport> room_reports;
};

/// Apply one discrete action. Turns always succeed; forward is a no-op
/// with moved=false when the destination cell or the swept segment
/// touches an obstacle. Collisions are not an error.
StepResult step(const Environment& env, const Pose& pose, Action action,
                const ActionSpec& spec);

/// Cast n_rays across the FOV, collect visible cells and depths, and draw
/// noisy semantic reports. Deterministic given (env, pose, sensor, rng).
Observation observe(const Environment& env, const Pose& pose,
                    const SensorConfig& sensor, Rng& rng);

}  // namespace ognav
