#pragma once

#include "ognav/types.hpp"

#include <span>

namespace ognav {

/// Deterministic waypoint controller. Targets the first path cell at
/// least forward_step away (else the last); turns toward it while the
/// heading error exceeds turn_angle/2 (shorter rotation, exact 180
/// degrees turns left), otherwise moves forward. Never emits Stop; the
/// episode harness owns the stop policy.
Action next_action(const Pose& pose, std::span<const Cell> path,
                   const ActionSpec& spec, double cell_size);

}  // namespace ognav
