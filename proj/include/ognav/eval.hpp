#pragma once

#include "ognav/episode.hpp"
#include "ognav/metrics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ognav {

struct EvalOptions {
  std::vector<std::string> scenario_paths;
  std::vector<PolicySpec> policies;
  int episodes_per_scenario = 1;
  std::uint64_t base_seed = 0;
  int jobs = 1;  // worker threads; results are order-independent
  bool keep_traces = false;
};

struct EvalRow {
  std::string policy;
  std::string scenario;
  int episode = 0;
  std::uint64_t seed = 0;
  EpisodeResult result;
  EpisodeTrace trace;  // audit always captured; steps only if keep_traces
};

struct EvalOutcome {
  std::vector<EvalRow> rows;  // fixed order: policy, scenario, episode

  RunReport report_for(const std::string& policy) const;
  /// Per-episode CSV (deterministic bytes, independent of jobs).
  std::string to_csv() const;
  /// Concatenated decision-audit JSONL in row order.
  std::string audit_jsonl() const;
  /// Per-policy summary table for stdout.
  std::string summary_text() const;
};

/// Run every (policy, scenario, episode) combination. Episodes are
/// independent; with jobs > 1 they run on a thread pool and results are
/// byte-identical to a serial run.
EvalOutcome evaluate(const EvalOptions& options, const RunConfig& config);

}  // namespace ognav
