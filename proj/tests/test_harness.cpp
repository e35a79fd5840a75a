#include "ognav/episode.hpp"

#include "ognav/belief_map.hpp"
#include "ognav/error.hpp"
#include "ognav/eval.hpp"
#include "ognav/fmm.hpp"
#include "ognav/geometry.hpp"
#include "ognav/metrics.hpp"
#include "ognav/scenario_gen.hpp"

#include <nlohmann/json.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ognav;
using nlohmann::json;

namespace {

const std::string kCorridorPath =
    std::string(OGNAV_SOURCE_DIR) + "/data/scenarios/corridor.json";

EpisodeResult make_result(bool success, double p, double l) {
  EpisodeResult r;
  r.success = success;
  r.path_length = p;
  r.shortest_path = l;
  r.stop_reason = success ? StopReason::StoppedNearTarget : StopReason::BudgetExhausted;
  r.error_class = success ? ErrorClass::None : ErrorClass::Exploration;
  return r;
}

Scenario corridor_facing_away() {
  // ring of 3-wide corridors around a center block; the target sits in
  // the bottom corridor, occluded from the start, so exploration has to
  // pick frontiers first
  const std::string doc = R"({
    "cell_size": 0.25,
    "grid": [
      "####################",
      "#..................#",
      "#..................#",
      "#..................#",
      "#.....########.....#",
      "#.....########.....#",
      "#.....########.....#",
      "#..................#",
      "#..................#",
      "#..................#",
      "####################"
    ],
    "rooms": {"hallway": [[1, 1, 18, 3], [1, 4, 5, 3], [14, 4, 5, 3]],
              "kitchen": [[1, 7, 18, 3]]},
    "objects": [{"label": "mug", "x": 9, "y": 8}],
    "start": {"x": 2.625, "y": 0.625, "theta": 3.14159265358979},
    "target": "mug"
  })";
  return parse_scenario(doc, "corridor_away");
}

Scenario tiny_scenario() {
  // target one cell from the start, everything visible
  const std::string doc = R"({
    "cell_size": 0.25,
    "grid": ["########", "#......#", "#......#", "#......#", "########"],
    "rooms": {"hallway": [[1, 1, 6, 3]]},
    "objects": [{"label": "mug", "x": 2, "y": 2}],
    "start": {"x": 0.375, "y": 0.625, "theta": 0.0},
    "target": "mug"
  })";
  return parse_scenario(doc, "tiny");
}

}  // namespace

TEST_CASE("compute_metrics: the three formula examples") {
  {
    const std::vector<EpisodeResult> rs = {make_result(true, 5.0, 5.0)};
    const RunReport rep = compute_metrics(rs);
    CHECK(rep.sr == doctest::Approx(100.0));
    CHECK(rep.spl == doctest::Approx(100.0));
  }
  {
    const std::vector<EpisodeResult> rs = {make_result(true, 10.0, 5.0)};
    const RunReport rep = compute_metrics(rs);
    CHECK(rep.sr == doctest::Approx(100.0));
    CHECK(rep.spl == doctest::Approx(50.0));
  }
  {
    const std::vector<EpisodeResult> rs = {make_result(false, 3.0, 5.0)};
    const RunReport rep = compute_metrics(rs);
    CHECK(rep.sr == 0.0);
    CHECK(rep.spl == 0.0);
    CHECK(rep.exploration_pct == doctest::Approx(100.0));
  }
  // SPL <= SR always: p < l cannot push the ratio above 1
  const std::vector<EpisodeResult> rs = {make_result(true, 2.0, 5.0),
                                         make_result(false, 0.0, 1.0)};
  const RunReport rep = compute_metrics(rs);
  CHECK(rep.spl <= rep.sr);
  CHECK(rep.spl == doctest::Approx(50.0));  // ratio capped at 1
}

TEST_CASE("policy spec parsing") {
  CHECK(PolicySpec::parse("consensus").kind == PolicySpec::Kind::Consensus);
  CHECK(PolicySpec::parse("closest").kind == PolicySpec::Kind::Closest);
  const auto m = PolicySpec::parse("majority:5");
  CHECK(m.kind == PolicySpec::Kind::Majority);
  CHECK(m.k == 5);
  const auto o = PolicySpec::parse("oracle:0.8");
  CHECK(o.kind == PolicySpec::Kind::SingleOracle);
  CHECK(o.oracle_p == doctest::Approx(0.8));
  CHECK_THROWS_AS(PolicySpec::parse("magic"), ConfigError);
  CHECK_THROWS_AS(PolicySpec::parse("majority:x"), ConfigError);
  CHECK_THROWS_AS(PolicySpec::parse("oracle:1.5"), ConfigError);
  CHECK_THROWS_AS(PolicySpec::parse("oracle:-0.2"), ConfigError);
  CHECK_THROWS_AS(PolicySpec::parse("majority:0"), ConfigError);
}

TEST_CASE("classify_error: taxonomy rules") {
  EpisodeContext ctx;
  ctx.stop_reason = StopReason::StoppedFar;
  ctx.goal_was_target = true;
  ctx.goal_cell_is_true_target = false;
  CHECK(classify_error(ctx) == ErrorClass::Detection);  // false target belief

  ctx = {};
  ctx.stop_reason = StopReason::BudgetExhausted;
  ctx.target_ever_visible = true;
  ctx.target_truly_reported = false;
  CHECK(classify_error(ctx) == ErrorClass::Detection);  // visible, never reported

  ctx = {};
  ctx.stop_reason = StopReason::Stuck;
  ctx.target_ever_visible = true;
  ctx.target_truly_reported = true;
  CHECK(classify_error(ctx) == ErrorClass::Planning);  // mapped but stuck

  ctx = {};
  ctx.stop_reason = StopReason::BudgetExhausted;
  CHECK(classify_error(ctx) == ErrorClass::Exploration);  // never seen at all
}

TEST_CASE("episode: adjacent target with a noiseless detector") {
  const Scenario scenario = tiny_scenario();
  RunConfig config;
  config.sensor.det_tp = 1.0;
  config.sensor.det_fp = 0.0;
  config.sensor.room_acc = 1.0;
  EpisodeSpec spec;
  spec.seed = 7;

  const EpisodeResult result =
      run_episode(scenario, spec, PolicySpec::parse("consensus"), config);
  CHECK(result.success);
  CHECK(result.stop_reason == StopReason::StoppedNearTarget);
  CHECK(result.error_class == ErrorClass::None);
  CHECK(result.shortest_path == 0.0);  // start already in the success region
  CHECK(std::abs(result.path_length - result.shortest_path) <= 0.25 + 1e-9);
  CHECK(result.spl() >= 0.9);
}

TEST_CASE("episode: strict 0.1 m success radius forces stopping on the cell") {
  const Scenario scenario = tiny_scenario();
  RunConfig config;
  config.sensor.det_tp = 1.0;
  config.sensor.det_fp = 0.0;
  config.harness.success_radius = 0.1;  // stricter than one cell
  EpisodeSpec spec;
  spec.success_radius = 0.1;
  spec.seed = 11;

  const EpisodeResult result =
      run_episode(scenario, spec, PolicySpec::parse("consensus"), config);
  CHECK(result.success);
  CHECK(result.stop_reason == StopReason::StoppedNearTarget);
  CHECK(result.path_length > 0.0);  // had to actually walk onto the cell
}

TEST_CASE("episode: replanning every step stays stable") {
  const Scenario scenario = corridor_facing_away();
  RunConfig config;
  config.experts.mode = ExpertMode::Oracle;
  config.experts.oracle_p = 1.0;
  config.sensor.det_tp = 1.0;
  config.sensor.det_fp = 0.0;
  config.harness.replan_interval = 1;
  EpisodeSpec spec;
  spec.seed = 2;

  const EpisodeResult result =
      run_episode(scenario, spec, PolicySpec::parse("consensus"), config);
  CHECK(result.success);
}

TEST_CASE("episode: det_tp=0 never justifies a stop") {
  const Scenario scenario = load_scenario(kCorridorPath);
  RunConfig config;
  config.sensor.det_tp = 0.0;
  config.sensor.det_fp = 0.0;
  config.harness.max_steps = 300;
  EpisodeSpec spec;
  spec.max_steps = 300;
  spec.seed = 3;

  const EpisodeResult result =
      run_episode(scenario, spec, PolicySpec::parse("closest"), config);
  CHECK_FALSE(result.success);
  CHECK((result.stop_reason == StopReason::BudgetExhausted ||
         result.stop_reason == StopReason::FrontiersExhausted));
  CHECK((result.error_class == ErrorClass::Detection ||
         result.error_class == ErrorClass::Exploration));
}

TEST_CASE("episode: corridor run is reproducible byte-for-byte") {
  const Scenario scenario = load_scenario(kCorridorPath);
  RunConfig config;
  EpisodeSpec spec;
  spec.seed = 99;

  EpisodeTrace t1, t2;
  const auto r1 = run_episode(scenario, spec, PolicySpec::parse("consensus"),
                              config, &t1);
  const auto r2 = run_episode(scenario, spec, PolicySpec::parse("consensus"),
                              config, &t2);
  CHECK(r1.success == r2.success);
  CHECK(r1.steps == r2.steps);
  CHECK(t1.steps_jsonl == t2.steps_jsonl);
  CHECK(t1.audit_jsonl == t2.audit_jsonl);
  CHECK(!t1.steps_jsonl.empty());
}

TEST_CASE("episode: reported path length matches the trace") {
  const Scenario scenario = load_scenario(kCorridorPath);
  RunConfig config;
  EpisodeSpec spec;
  spec.seed = 1234;

  EpisodeTrace trace;
  const EpisodeResult result = run_episode(
      scenario, spec, PolicySpec::parse("closest"), config, &trace);

  int moved_forward = 0, records = 0;
  std::istringstream in(trace.steps_jsonl);
  std::string line;
  while (std::getline(in, line)) {
    const json rec = json::parse(line);
    ++records;
    CHECK(rec.contains("pose"));
    CHECK(rec.contains("goal"));
    if (rec["action"] == "forward" && rec["moved"].get<bool>()) ++moved_forward;
  }
  CHECK(records == result.steps);
  CHECK(result.path_length ==
        doctest::Approx(moved_forward * config.actions.forward_step));
}

TEST_CASE("generator: deterministic, loader-valid, reachable") {
  GenParams params;
  params.seed = 2024;
  params.rooms = 4;
  CHECK(generate_scenario_json(params) == generate_scenario_json(params));

  for (int i = 0; i < 10; ++i) {
    params.seed = 5000 + static_cast<std::uint64_t>(i);
    const std::string doc = generate_scenario_json(params);
    const Scenario s = parse_scenario(doc, "gen");  // loader validates
    const BeliefMap truth = BeliefMap::from_environment(s.env);
    const auto d = geodesic_distance(
        truth, cell_of(s.start.position(), s.env.cell_size()),
        s.env.target_positions(s.target));
    REQUIRE(d.has_value());
    CHECK(*d > 0.0);
  }

  // single-room degenerate case
  params.rooms = 1;
  params.seed = 77;
  const Scenario s = parse_scenario(generate_scenario_json(params), "gen1");
  CHECK(s.env.room_vocab().size() >= 1);
}

TEST_CASE("evaluate: thread-parallel equals serial, byte for byte") {
  const std::string dir = "eval_scenarios_tmp";
  GenParams params;
  params.width = 32;
  params.height = 32;
  params.rooms = 3;
  params.seed = 31;
  const auto paths = generate_scenarios(params, 3, dir);

  RunConfig config;
  config.harness.max_steps = 150;
  EvalOptions options;
  options.scenario_paths = paths;
  options.policies = {PolicySpec::parse("closest"), PolicySpec::parse("oracle:0.7")};
  options.episodes_per_scenario = 2;
  options.base_seed = 9;
  options.keep_traces = true;

  options.jobs = 1;
  const EvalOutcome serial = evaluate(options, config);
  options.jobs = 4;
  const EvalOutcome parallel = evaluate(options, config);

  CHECK(serial.to_csv() == parallel.to_csv());
  CHECK(serial.audit_jsonl() == parallel.audit_jsonl());
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i)
    CHECK(serial.rows[i].trace.steps_jsonl == parallel.rows[i].trace.steps_jsonl);

  // every failed episode carries exactly one error class; successes none
  for (const auto& row : serial.rows) {
    if (row.result.success)
      CHECK(row.result.error_class == ErrorClass::None);
    else
      CHECK(row.result.error_class != ErrorClass::None);
  }

  std::filesystem::remove_all(dir);
}

TEST_CASE("scenario loader: diagnostics for inconsistent documents") {
  auto bad = [](const std::string& doc) {
    CHECK_THROWS_AS(parse_scenario(doc, "bad"), ScenarioError);
  };
  bad("{");                                                    // not JSON
  bad(R"({"cell_size": 0.25})");                               // missing fields
  bad(R"({"cell_size": 0, "grid": ["###","#.#","###"], "rooms": {"r":[[1,1,1,1]]},
        "objects": [], "start": {"x":0.3,"y":0.3,"theta":0}, "target": "x"})");
  // open boundary
  bad(R"({"cell_size": 0.25, "grid": ["...","...","..."], "rooms": {"r":[[0,0,3,3]]},
        "objects": [{"label":"m","x":1,"y":1}],
        "start": {"x":0.3,"y":0.3,"theta":0}, "target": "m"})");
  // free cell without a room
  bad(R"({"cell_size": 0.25, "grid": ["####","#..#","####"], "rooms": {"r":[[1,1,1,1]]},
        "objects": [{"label":"m","x":1,"y":1}],
        "start": {"x":0.3,"y":0.3,"theta":0}, "target": "m"})");
  // start inside a wall
  bad(R"({"cell_size": 0.25, "grid": ["####","#..#","####"], "rooms": {"r":[[1,1,2,1]]},
        "objects": [{"label":"m","x":1,"y":1}],
        "start": {"x":0.1,"y":0.1,"theta":0}, "target": "m"})");
  // target not among objects
  bad(R"({"cell_size": 0.25, "grid": ["####","#..#","####"], "rooms": {"r":[[1,1,2,1]]},
        "objects": [{"label":"m","x":1,"y":1}],
        "start": {"x":0.3,"y":0.3,"theta":0}, "target": "zz"})");
  // object on an obstacle
  bad(R"({"cell_size": 0.25, "grid": ["####","#..#","####"], "rooms": {"r":[[1,1,2,1]]},
        "objects": [{"label":"m","x":0,"y":0}],
        "start": {"x":0.3,"y":0.3,"theta":0}, "target": "m"})");
}

TEST_CASE("config loader: defaults, overrides and validation") {
  const RunConfig defaults = parse_config("{}", "empty");
  CHECK(defaults.sensor.det_tp == doctest::Approx(0.95));
  CHECK(defaults.harness.max_steps == 500);
  CHECK(defaults.harness.success_radius == doctest::Approx(1.0));

  const RunConfig cfg = parse_config(R"({
    "sensor": {"det_tp": 0.5, "n_rays": 31},
    "actions": {"forward_step": 0.5},
    "experts": {"mode": "oracle", "oracle_p": 0.9, "sle_weights": [0.2, 0.3, 0.5]},
    "harness": {"success_radius": 0.1}
  })", "t");
  CHECK(cfg.sensor.det_tp == doctest::Approx(0.5));
  CHECK(cfg.sensor.n_rays == 31);
  CHECK(cfg.experts.mode == ExpertMode::Oracle);
  CHECK(cfg.harness.success_radius == doctest::Approx(0.1));

  CHECK_THROWS_AS(parse_config(R"({"sensor": {"det_tp": 1.5}})", "t"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experts": {"sle_weights": [1, 1, 1]}})", "t"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"experts": {"mode": "psychic"}})", "t"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("]", "t"), ConfigError);
}

TEST_CASE("audit records carry the full decision schema") {
  const Scenario scenario = corridor_facing_away();
  RunConfig config;
  config.experts.mode = ExpertMode::Oracle;
  EpisodeSpec spec;
  spec.seed = 9;

  EpisodeTrace trace;
  run_episode(scenario, spec, PolicySpec::parse("consensus"), config, &trace);
  REQUIRE(!trace.audit_jsonl.empty());

  std::istringstream in(trace.audit_jsonl);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    const json rec = json::parse(line);
    if (!rec.contains("candidate_ids")) continue;  // expert-failure events
    ++rows;
    for (const char* key : {"step", "candidate_ids", "s1", "s2", "s3", "tier",
                            "consensus_set", "distances", "chosen"})
      CHECK(rec.contains(key));
    // chosen is always one of the candidates
    bool found = false;
    for (const auto& id : rec["candidate_ids"])
      if (id.get<int>() == rec["chosen"].get<int>()) found = true;
    CHECK(found);
    // distances keyed by candidate id, finite values
    for (const auto& [key, value] : rec["distances"].items())
      CHECK(value.get<double>() >= 0.0);
  }
  CHECK(rows > 0);
}

TEST_CASE("episode: http expert mode degrades to fallback without endpoints") {
  // start faces away from the target so frontier decisions must happen
  const Scenario scenario = corridor_facing_away();
  RunConfig config;
  config.experts.mode = ExpertMode::Http;  // no endpoints configured
  config.experts.http_timeout_ms = 50;
  EpisodeSpec spec;
  spec.seed = 21;

  EpisodeTrace trace;
  const EpisodeResult result = run_episode(
      scenario, spec, PolicySpec::parse("consensus"), config, &trace);
  // all three experts come back empty; CDM falls back to closest frontier
  CHECK(trace.audit_jsonl.find("expert_failure") != std::string::npos);
  CHECK(trace.audit_jsonl.find("\"tier\":\"fallback\"") != std::string::npos);
  CHECK(result.steps > 0);
}

TEST_CASE("episode: consensus with oracle experts finds the target") {
  const Scenario scenario = corridor_facing_away();
  RunConfig config;
  config.experts.mode = ExpertMode::Oracle;
  config.experts.oracle_p = 1.0;  // perfect experts
  config.sensor.det_tp = 1.0;     // and a clean detector
  config.sensor.det_fp = 0.0;
  EpisodeSpec spec;
  spec.seed = 4;

  EpisodeTrace trace;
  const EpisodeResult result = run_episode(
      scenario, spec, PolicySpec::parse("consensus"), config, &trace);
  CHECK(result.success);
  // perfect experts agree unanimously whenever >1 candidate exists
  CHECK(trace.audit_jsonl.find("\"tier\":\"unanimous\"") != std::string::npos);
}

TEST_CASE("cli: exit codes for config and scenario errors") {
  const std::string cli = OGNAV_CLI_PATH;
  if (!std::filesystem::exists(cli)) return;  // CLI not built yet

  auto run = [&](const std::string& args) {
    const int rc = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
  };
  CHECK(run("run --scenario /nonexistent.json") == 3);
  CHECK(run("run --scenario " + kCorridorPath + " --policy bogus") == 2);
  CHECK(run("field --scenario " + kCorridorPath + " --goal not_a_pair") == 2);
  CHECK(run("run --scenario " + kCorridorPath + " --seed 5") == 0);
  CHECK(run("run --scenario " + kCorridorPath + " --target table") == 0);
  CHECK(run("run --scenario " + kCorridorPath + " --target sofa") == 3);

  // belief snapshot export
  CHECK(run("run --scenario " + kCorridorPath + " --seed 5 --map-out cli_map") == 0);
  {
    std::ifstream grid("cli_map.grid.txt");
    REQUIRE(grid.good());
    std::string row;
    std::getline(grid, row);
    CHECK(row.size() == 20);  // corridor width
    CHECK(std::filesystem::exists("cli_map.semantic.json"));
    std::filesystem::remove("cli_map.grid.txt");
    std::filesystem::remove("cli_map.semantic.json");
  }
}
