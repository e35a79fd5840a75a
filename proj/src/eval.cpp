#include "ognav/eval.hpp"

#include "ognav/error.hpp"
#include "ognav/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace ognav {

using nlohmann::json;

RunReport EvalOutcome::report_for(const std::string& policy) const {
  std::vector<EpisodeResult> results;
  for (const EvalRow& row : rows)
    if (row.policy == policy) results.push_back(row.result);
  return compute_metrics(results);
}

std::string EvalOutcome::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "policy,scenario,episode,seed,success,steps,path_length,"
         "shortest_path,spl,stop_reason,error_class\n";
  for (const EvalRow& row : rows) {
    const EpisodeResult& r = row.result;
    out << row.policy << ',' << row.scenario << ',' << row.episode << ','
        << row.seed << ',' << (r.success ? 1 : 0) << ',' << r.steps << ','
        << r.path_length << ',' << r.shortest_path << ',' << r.spl() << ','
        << to_string(r.stop_reason) << ',' << to_string(r.error_class) << '\n';
  }
  return out.str();
}

std::string EvalOutcome::audit_jsonl() const {
  std::string out;
  for (const EvalRow& row : rows) {
    if (row.trace.audit_jsonl.empty()) continue;
    json header{{"episode", row.episode},
                {"policy", row.policy},
                {"scenario", row.scenario},
                {"seed", row.seed}};
    out += header.dump() + "\n";
    out += row.trace.audit_jsonl;
  }
  return out;
}

std::string EvalOutcome::summary_text() const {
  std::vector<std::string> policies;
  for (const EvalRow& row : rows)
    if (std::find(policies.begin(), policies.end(), row.policy) == policies.end())
      policies.push_back(row.policy);

  std::ostringstream out;
  out << "policy            episodes   SR%    SPL%   det%   plan%  expl%  frontier_dist\n";
  for (const std::string& policy : policies) {
    const RunReport rep = report_for(policy);
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%-17s %8d %6.1f %6.1f %6.1f %6.1f %6.1f %9.2f\n",
                  policy.c_str(), rep.episodes, rep.sr, rep.spl,
                  rep.detection_pct, rep.planning_pct, rep.exploration_pct,
                  rep.mean_frontier_dist);
    out << line;
  }
  return out.str();
}

EvalOutcome evaluate(const EvalOptions& options, const RunConfig& config) {
  config.validate();
  if (options.scenario_paths.empty())
    throw ConfigError("evaluate: no scenarios given");
  if (options.policies.empty()) throw ConfigError("evaluate: no policies given");
  if (options.episodes_per_scenario < 1)
    throw ConfigError("evaluate: episodes_per_scenario must be >= 1");

  std::vector<Scenario> scenarios;
  scenarios.reserve(options.scenario_paths.size());
  for (const std::string& path : options.scenario_paths)
    scenarios.push_back(load_scenario(path));

  struct Job {
    int policy_i, scenario_i, episode_i;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < options.policies.size(); ++p)
    for (std::size_t s = 0; s < scenarios.size(); ++s)
      for (int e = 0; e < options.episodes_per_scenario; ++e)
        jobs.push_back({static_cast<int>(p), static_cast<int>(s), e});

  EvalOutcome outcome;
  outcome.rows.resize(jobs.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job& job = jobs[i];
      try {
        EpisodeSpec spec;
        spec.max_steps = config.harness.max_steps;
        spec.success_radius = config.harness.success_radius;
        // Seeds are paired across policies: same scenario/episode, same
        // sensor-noise stream at the start.
        spec.seed = derive_seed(options.base_seed,
                                static_cast<std::uint64_t>(job.scenario_i),
                                static_cast<std::uint64_t>(job.episode_i));
        EvalRow& row = outcome.rows[i];
        row.policy = options.policies[static_cast<std::size_t>(job.policy_i)].to_string();
        row.scenario = options.scenario_paths[static_cast<std::size_t>(job.scenario_i)];
        row.episode = job.episode_i;
        row.seed = spec.seed;
        row.result = run_episode(scenarios[static_cast<std::size_t>(job.scenario_i)],
                                 spec,
                                 options.policies[static_cast<std::size_t>(job.policy_i)],
                                 config, &row.trace);
        if (!options.keep_traces) row.trace.steps_jsonl.clear();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const int jobs_n = std::max(1, options.jobs);
  if (jobs_n == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < jobs_n; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return outcome;
}

}  // namespace ognav
