// Command-line front end: scenario generation, single episodes, batch
// evaluation and distance-field export.

#include "ognav/belief_map.hpp"
#include "ognav/config.hpp"
#include "ognav/episode.hpp"
#include "ognav/error.hpp"
#include "ognav/eval.hpp"
#include "ognav/fmm.hpp"
#include "ognav/geometry.hpp"
#include "ognav/scenario_gen.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace ognav;
using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << content;
}

RunConfig config_from(const std::string& path) {
  return path.empty() ? RunConfig{} : load_config(path);
}

int run_gen(int n, int size, int rooms, double density, std::uint64_t seed,
            const std::string& out_dir) {
  GenParams params;
  params.width = size;
  params.height = size;
  params.rooms = rooms;
  params.object_density = density;
  params.seed = seed;
  const auto paths = generate_scenarios(params, n, out_dir);
  for (const auto& p : paths) std::cout << p << "\n";
  return 0;
}

int run_single(const std::string& scenario_path, const std::string& target,
               const std::string& policy_text, std::uint64_t seed,
               const std::string& config_path, const std::string& trace_out,
               const std::string& map_out) {
  const RunConfig config = config_from(config_path);
  const Scenario scenario = load_scenario(scenario_path);
  const PolicySpec policy = PolicySpec::parse(policy_text);

  EpisodeSpec spec;
  spec.target = target;
  spec.max_steps = config.harness.max_steps;
  spec.success_radius = config.harness.success_radius;
  spec.seed = seed;

  EpisodeTrace trace;
  BeliefMap belief(1, 1, 1.0);
  const EpisodeResult result =
      run_episode(scenario, spec, policy, config, &trace, &belief);

  if (!trace_out.empty()) write_file(trace_out, trace.steps_jsonl);
  if (!map_out.empty()) {
    write_file(map_out + ".grid.txt", belief.to_text());
    write_file(map_out + ".semantic.json", belief.semantic_json());
  }

  json out;
  out["success"] = result.success;
  out["steps"] = result.steps;
  out["path_length"] = result.path_length;
  out["shortest_path"] = result.shortest_path;
  out["spl"] = result.spl();
  out["stop_reason"] = to_string(result.stop_reason);
  out["error_class"] = to_string(result.error_class);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_eval(const std::string& scenario_dir, const std::string& policies_text,
             int episodes, std::uint64_t seed, const std::string& config_path,
             const std::string& report_path, const std::string& audit_path,
             int jobs) {
  const RunConfig config = config_from(config_path);

  EvalOptions options;
  for (const auto& entry :
       std::filesystem::directory_iterator(scenario_dir)) {
    if (entry.path().extension() == ".json")
      options.scenario_paths.push_back(entry.path().string());
  }
  std::sort(options.scenario_paths.begin(), options.scenario_paths.end());
  if (options.scenario_paths.empty())
    throw ScenarioError(scenario_dir + ": no .json scenarios found");

  std::stringstream ss(policies_text);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) options.policies.push_back(PolicySpec::parse(token));
  options.episodes_per_scenario = episodes;
  options.base_seed = seed;
  options.jobs = jobs;

  const EvalOutcome outcome = evaluate(options, config);
  if (!report_path.empty()) write_file(report_path, outcome.to_csv());
  if (!audit_path.empty()) write_file(audit_path, outcome.audit_jsonl());
  std::cout << outcome.summary_text();
  return 0;
}

int run_field(const std::string& scenario_path, const std::string& goal_text,
              const std::string& out_path) {
  const Scenario scenario = load_scenario(scenario_path);
  const double h = scenario.env.cell_size();

  double gx = 0.0, gy = 0.0;
  if (std::sscanf(goal_text.c_str(), "%lf,%lf", &gx, &gy) != 2)
    throw ConfigError("--goal must be \"x,y\" in meters");
  const Cell goal = cell_of({gx, gy}, h);
  if (!scenario.env.in_bounds(goal) || scenario.env.is_obstacle(goal))
    throw ScenarioError("goal cell is outside free space");

  const BeliefMap truth = BeliefMap::from_environment(scenario.env);
  const DistanceField field = fmm_field(truth, {goal}, FmmOptions{});
  const std::string csv = field_to_csv(field);
  if (out_path.empty())
    std::cout << csv;
  else
    write_file(out_path, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frontier-based object-goal navigation simulator"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate scenario files");
  int gen_n = 10, gen_size = 40, gen_rooms = 4;
  double gen_density = 3.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "scenarios";
  gen->add_option("--n", gen_n, "Number of scenarios");
  gen->add_option("--size", gen_size, "Grid side length in cells");
  gen->add_option("--rooms", gen_rooms, "Room count");
  gen->add_option("--density", gen_density, "Expected objects per room");
  gen->add_option("--seed", gen_seed, "Base seed");
  gen->add_option("--out-dir", gen_out, "Output directory");

  // run
  auto* run = app.add_subcommand("run", "Run one episode");
  std::string run_scenario, run_target, run_policy = "consensus";
  std::string run_config, run_trace, run_map;
  std::uint64_t run_seed = 0;
  run->add_option("--scenario", run_scenario, "Scenario JSON file")->required();
  run->add_option("--target", run_target, "Target label (default: scenario's)");
  run->add_option("--policy", run_policy,
                  "consensus|majority:k|closest|oracle:p");
  run->add_option("--seed", run_seed, "Episode seed");
  run->add_option("--config", run_config, "Config JSON file");
  run->add_option("--trace-out", run_trace, "Write step trace JSONL here");
  run->add_option("--map-out", run_map, "Write final belief snapshot prefix");

  // eval
  auto* eval = app.add_subcommand("eval", "Batch evaluation");
  std::string eval_dir, eval_policies = "consensus,closest";
  std::string eval_config, eval_report, eval_audit;
  int eval_episodes = 1, eval_jobs = 1;
  std::uint64_t eval_seed = 0;
  eval->add_option("--scenario-dir", eval_dir, "Directory of scenario JSON files")
      ->required();
  eval->add_option("--policies", eval_policies, "Comma-separated policy list");
  eval->add_option("--episodes-per-scenario", eval_episodes, "Episodes per scenario");
  eval->add_option("--seed", eval_seed, "Base seed");
  eval->add_option("--config", eval_config, "Config JSON file");
  eval->add_option("--report", eval_report, "Per-episode CSV output");
  eval->add_option("--audit", eval_audit, "Decision audit JSONL output");
  eval->add_option("--jobs", eval_jobs, "Worker threads");

  // field
  auto* field = app.add_subcommand("field", "Export a distance field as CSV");
  std::string field_scenario, field_goal, field_out;
  field->add_option("--scenario", field_scenario, "Scenario JSON file")->required();
  field->add_option("--goal", field_goal, "Goal position \"x,y\" in meters")
      ->required();
  field->add_option("--out", field_out, "Output CSV (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return run_gen(gen_n, gen_size, gen_rooms, gen_density, gen_seed, gen_out);
    if (run->parsed())
      return run_single(run_scenario, run_target, run_policy, run_seed,
                        run_config, run_trace, run_map);
    if (eval->parsed())
      return run_eval(eval_dir, eval_policies, eval_episodes, eval_seed,
                      eval_config, eval_report, eval_audit, eval_jobs);
    if (field->parsed()) return run_field(field_scenario, field_goal, field_out);
  } catch (const ognav::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ognav::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
