#pragma once

#include "ognav/affinity.hpp"
#include "ognav/experts.hpp"
#include "ognav/types.hpp"

#include <map>
#include <optional>
#include <string>

namespace ognav {

struct MappingConfig {
  int min_frontier_size = 2;
  double context_radius = 1.5;  // meters
};

enum class ExpertMode { Rules, Oracle, Http };

struct ExpertConfig {
  ExpertMode mode = ExpertMode::Rules;
  double threshold = 0.5;
  int top_k = 3;
  SleWeights sle_weights;
  std::string affinity_path;  // empty -> built-in defaults
  double oracle_p = 0.7;      // noisy-oracle correctness, also majority:k expert
  std::map<std::string, std::string> http_endpoints;  // expert name -> URL
  int http_timeout_ms = 1000;
};

struct PlannerConfig {
  bool inflate_obstacles = true;
};

struct HarnessConfig {
  int max_steps = 500;
  double success_radius = 1.0;  // meters
  int replan_interval = 10;     // steps between forced global decisions
};

/// Everything an episode needs beside the scenario. Mirrors the JSON
/// config document; all fields optional with these defaults.
struct RunConfig {
  SensorConfig sensor;
  ActionSpec actions;
  MappingConfig mapping;
  ExpertConfig experts;
  PlannerConfig planner;
  HarnessConfig harness;

  void validate() const;  // throws ConfigError

  /// Affinity table: loaded from experts.affinity_path when set,
  /// otherwise the built-in default table.
  AffinityTable load_affinity() const;
};

RunConfig parse_config(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);

/// Table shipped with the repo (12 household target categories).
AffinityTable default_affinity_table();

}  // namespace ognav
