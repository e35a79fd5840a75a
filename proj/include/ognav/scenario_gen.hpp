#pragma once

#include "ognav/environment.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ognav {

/// Procedural floorplan parameters: recursive rectangular rooms joined by
/// door gaps, room-conditioned object placement, seeded determinism.
struct GenParams {
  int width = 40;
  int height = 40;
  int rooms = 4;
  double object_density = 3.0;  // expected objects per room
  std::uint64_t seed = 0;
  double cell_size = 0.25;
};

/// Generate one scenario document. The result always passes the loader
/// and has start-to-target reachability (both plain geodesic and under
/// planning inflation). Throws ScenarioError after 100 failed placement
/// retries.
std::string generate_scenario_json(const GenParams& params);

Scenario generate_scenario(const GenParams& params);

/// Write n scenarios (seed, seed+1, ...) as scenario_000.json ... into
/// out_dir; returns the file paths.
std::vector<std::string> generate_scenarios(const GenParams& params, int n,
                                            const std::string& out_dir);

}  // namespace ognav
