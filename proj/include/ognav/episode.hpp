#pragma once

#include "ognav/config.hpp"
#include "ognav/environment.hpp"
#include "ognav/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ognav {

class BeliefMap;

enum class StopReason {
  StoppedNearTarget,
  StoppedFar,
  BudgetExhausted,
  FrontiersExhausted,
  Stuck,
};

enum class ErrorClass { None, Detection, Planning, Exploration };

const char* to_string(StopReason r);
const char* to_string(ErrorClass e);

/// Frontier-selection policy for the global decision.
struct PolicySpec {
  enum class Kind { Consensus, Majority, Closest, SingleOracle };
  Kind kind = Kind::Consensus;
  int k = 3;            // Majority sample count
  double oracle_p = -1; // SingleOracle/Majority correctness; <0 -> config value

  /// Parse "consensus" | "majority:k" | "closest" | "oracle:p".
  static PolicySpec parse(const std::string& text);
  std::string to_string() const;
};

struct EpisodeSpec {
  std::string target;          // empty -> scenario target
  int max_steps = 500;
  double success_radius = 1.0;
  std::uint64_t seed = 0;
};

struct EpisodeResult {
  bool success = false;
  int steps = 0;
  double path_length = 0.0;    // realized forward motion, meters
  double shortest_path = 0.0;  // ground-truth geodesic to the success region
  StopReason stop_reason = StopReason::BudgetExhausted;
  ErrorClass error_class = ErrorClass::None;
  double frontier_dist_sum = 0.0;  // chosen-frontier distances, for reporting
  int frontier_decisions = 0;

  double spl() const;
};

/// Step records (and optionally audit records) captured during a run.
struct EpisodeTrace {
  std::string steps_jsonl;
  std::string audit_jsonl;
};

/// Everything classify_error needs, gathered while the episode runs.
struct EpisodeContext {
  StopReason stop_reason = StopReason::BudgetExhausted;
  bool goal_was_target = false;   // goal kind at episode end
  bool goal_cell_is_true_target = false;
  bool target_ever_visible = false;
  bool target_truly_reported = false;
};

/// The paper-style failure taxonomy. Call only for failed episodes.
ErrorClass classify_error(const EpisodeContext& ctx);

/// Run one full episode: observe/integrate, global decisions on the
/// replan triggers, FMM local navigation, stop on believed proximity to a
/// detected target. Deterministic given (scenario, spec, policy, config).
/// final_belief, when non-null, receives the end-of-episode belief map.
EpisodeResult run_episode(const Scenario& scenario, const EpisodeSpec& spec,
                          const PolicySpec& policy, const RunConfig& config,
                          EpisodeTrace* trace = nullptr,
                          BeliefMap* final_belief = nullptr);

}  // namespace ognav
