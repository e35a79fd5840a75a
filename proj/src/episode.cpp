#include "ognav/episode.hpp"

#include "ognav/belief_map.hpp"
#include "ognav/consensus.hpp"
#include "ognav/error.hpp"
#include "ognav/experts.hpp"
#include "ognav/fmm.hpp"
#include "ognav/frontier.hpp"
#include "ognav/geometry.hpp"
#include "ognav/http_expert.hpp"
#include "ognav/local_policy.hpp"
#include "ognav/rng.hpp"
#include "ognav/world.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace ognav {

using nlohmann::json;

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::StoppedNearTarget: return "stopped_near_target";
    case StopReason::StoppedFar: return "stopped_far";
    case StopReason::BudgetExhausted: return "budget_exhausted";
    case StopReason::FrontiersExhausted: return "frontiers_exhausted";
    case StopReason::Stuck: return "stuck";
  }
  return "?";
}

const char* to_string(ErrorClass e) {
  switch (e) {
    case ErrorClass::None: return "none";
    case ErrorClass::Detection: return "detection";
    case ErrorClass::Planning: return "planning";
    case ErrorClass::Exploration: return "exploration";
  }
  return "?";
}

PolicySpec PolicySpec::parse(const std::string& text) {
  PolicySpec spec;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "consensus" && arg.empty()) {
      spec.kind = Kind::Consensus;
    } else if (head == "closest" && arg.empty()) {
      spec.kind = Kind::Closest;
    } else if (head == "majority") {
      spec.kind = Kind::Majority;
      spec.k = arg.empty() ? 3 : std::stoi(arg);
      if (spec.k < 1) throw ConfigError("majority sample count must be >= 1");
    } else if (head == "oracle") {
      spec.kind = Kind::SingleOracle;
      if (!arg.empty()) {
        spec.oracle_p = std::stod(arg);
        if (spec.oracle_p < 0.0 || spec.oracle_p > 1.0)
          throw ConfigError("oracle probability must be in [0, 1]");
      }
    } else {
      throw ConfigError("unknown policy \"" + text +
                        "\" (expected consensus|majority:k|closest|oracle:p)");
    }
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad policy argument in \"" + text + "\"");
  } catch (const std::out_of_range&) {
    throw ConfigError("bad policy argument in \"" + text + "\"");
  }
  return spec;
}

std::string PolicySpec::to_string() const {
  switch (kind) {
    case Kind::Consensus: return "consensus";
    case Kind::Closest: return "closest";
    case Kind::Majority: return "majority:" + std::to_string(k);
    case Kind::SingleOracle: {
      std::ostringstream out;
      out << "oracle:" << oracle_p;
      return out.str();
    }
  }
  return "?";
}

ErrorClass classify_error(const EpisodeContext& ctx) {
  if (ctx.stop_reason == StopReason::StoppedFar && ctx.goal_was_target &&
      !ctx.goal_cell_is_true_target)
    return ErrorClass::Detection;
  if (ctx.target_ever_visible && !ctx.target_truly_reported)
    return ErrorClass::Detection;
  if (ctx.target_truly_reported &&
      (ctx.stop_reason == StopReason::Stuck ||
       ctx.stop_reason == StopReason::BudgetExhausted))
    return ErrorClass::Planning;
  if (ctx.stop_reason == StopReason::Stuck) return ErrorClass::Planning;
  return ErrorClass::Exploration;
}

namespace {

constexpr double kEps = 1e-9;

json cell_json(const Cell& c) { return json::array({c.x, c.y}); }

json set_json(const std::set<int>& s) {
  json arr = json::array();
  for (int id : s) arr.push_back(id);
  return arr;
}

/// Orchestrates one episode; owns the belief map, RNG streams and trace.
class EpisodeRunner {
 public:
  EpisodeRunner(const Scenario& scenario, const EpisodeSpec& spec,
                const PolicySpec& policy, const RunConfig& config,
                EpisodeTrace* trace)
      : env_(scenario.env),
        spec_(spec),
        policy_(policy),
        config_(config),
        trace_(trace),
        belief_(env_.width(), env_.height(), env_.cell_size()),
        sensor_rng_(derive_seed(spec.seed, 0x5e)),
        policy_rng_(derive_seed(spec.seed, 0x90)),
        pose_(scenario.start) {
    target_ = spec.target.empty() ? scenario.target : spec.target;
    true_targets_ = env_.target_positions(target_);
    if (true_targets_.empty())
      throw ScenarioError("target \"" + target_ + "\" not present in scenario");
    if (policy_.kind == PolicySpec::Kind::Consensus &&
        config_.experts.mode == ExpertMode::Rules)
      affinity_ = config_.load_affinity();
    oracle_p_ = policy_.oracle_p >= 0.0 ? policy_.oracle_p : config_.experts.oracle_p;

    const BeliefMap truth = BeliefMap::from_environment(env_);
    true_target_field_ = fmm_field(truth, true_targets_, FmmOptions{});
  }

  EpisodeResult run();

  const BeliefMap& belief() const { return belief_; }

 private:
  struct Goal {
    enum class Kind { None, Frontier, Target } kind = Kind::None;
    Cell cell;
    std::vector<Cell> sources;
  };

  Cell agent_cell() const { return cell_of(pose_.position(), env_.cell_size()); }

  std::vector<Cell> start_ring() const {
    std::vector<Cell> ring;
    const Cell a = agent_cell();
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const Cell c{a.x + dx, a.y + dy};
        if (env_.in_bounds(c)) ring.push_back(c);
      }
    return ring;
  }

  void build_plan_field() {
    FmmOptions opts;
    opts.unknown_traversable = true;
    opts.inflate_obstacles = config_.planner.inflate_obstacles;
    opts.force_traversable = start_ring();
    plan_field_ = fmm_field(belief_, goal_.sources, opts);
    have_plan_field_ = true;
  }

  void end(StopReason reason) {
    reason_ = reason;
    ended_ = true;
  }

  // --- global decision ---

  bool decide(int step);  // false when the episode ended during the decision
  bool decide_frontier(int step);
  std::optional<int> apply_policy(const std::vector<int>& candidates,
                                  const std::map<int, double>& distances,
                                  const std::vector<Frontier>& frontiers,
                                  int step, json* audit);

  // --- local navigation ---

  std::optional<std::vector<Cell>> plan_path();

  void write_step_record(int step, const Pose& pose, Action action, bool moved,
                         json decision_audit);

  const Environment& env_;
  const EpisodeSpec spec_;
  const PolicySpec policy_;
  const RunConfig& config_;
  EpisodeTrace* trace_;

  BeliefMap belief_;
  Rng sensor_rng_;
  Rng policy_rng_;
  Pose pose_;
  std::string target_;
  std::vector<Cell> true_targets_;
  DistanceField true_target_field_;
  AffinityTable affinity_;
  double oracle_p_ = 0.7;

  Goal goal_;
  DistanceField plan_field_;
  bool have_plan_field_ = false;
  int steps_since_decision_ = 0;
  int blocked_streak_ = 0;
  std::set<int> excluded_;  // frontier ids dropped within one decision round

  bool ended_ = false;
  StopReason reason_ = StopReason::BudgetExhausted;
  EpisodeContext ctx_;
  EpisodeResult result_;
  json pending_audit_;
};

bool EpisodeRunner::decide(int step) {
  excluded_.clear();
  steps_since_decision_ = 0;
  have_plan_field_ = false;

  std::vector<Cell> believed = belief_.cells_with_object(target_);
  if (!believed.empty()) {
    // Target known. Twice-confirmed cells outrank single sightings (a
    // lone false positive should not beat a repeatedly seen target),
    // then the nearest believed cell wins.
    auto count_at = [&](const Cell& c) {
      return belief_.object_layer().at(c).at(target_);
    };
    bool any_confirmed = false;
    for (const Cell& c : believed) any_confirmed = any_confirmed || count_at(c) >= 2;
    if (any_confirmed)
      std::erase_if(believed, [&](const Cell& c) { return count_at(c) < 2; });

    const DistanceField from_agent = fmm_field(belief_, {agent_cell()}, FmmOptions{});
    Cell best = believed.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (const Cell& c : believed) {
      const double d = from_agent.at(c);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    goal_.kind = Goal::Kind::Target;
    goal_.cell = best;
    goal_.sources = {best};
    return true;
  }
  return decide_frontier(step);
}

bool EpisodeRunner::decide_frontier(int step) {
  const std::vector<Frontier> frontiers =
      extract_frontiers(belief_, config_.mapping.min_frontier_size);
  if (frontiers.empty()) {
    end(StopReason::FrontiersExhausted);
    return false;
  }

  // Rank by geodesic distance through known space, agent-sourced.
  const DistanceField rank_field = fmm_field(belief_, {agent_cell()}, FmmOptions{});
  std::vector<int> candidates;
  std::map<int, double> distances;
  for (const Frontier& f : frontiers) {
    if (excluded_.count(f.id)) continue;
    double d = rank_field.at(representative_cell(f, belief_.cell_size()));
    if (!std::isfinite(d)) {
      for (const Cell& c : f.cells) d = std::min(d, rank_field.at(c));
    }
    if (!std::isfinite(d)) continue;  // unreachable through known free space
    candidates.push_back(f.id);
    distances[f.id] = d;
  }
  if (candidates.empty()) {
    // Frontiers exist but none is reachable/plannable: a planning failure.
    end(StopReason::Stuck);
    return false;
  }

  json audit;
  const std::optional<int> chosen =
      apply_policy(candidates, distances, frontiers, step, &audit);
  if (!chosen) {
    end(StopReason::Stuck);
    return false;
  }

  const Frontier& f = frontiers[static_cast<std::size_t>(*chosen)];
  goal_.kind = Goal::Kind::Frontier;
  goal_.cell = representative_cell(f, belief_.cell_size());
  goal_.sources = f.cells;
  result_.frontier_dist_sum += distances[*chosen];
  result_.frontier_decisions += 1;

  pending_audit_ = std::move(audit);
  return true;
}

std::optional<int> EpisodeRunner::apply_policy(
    const std::vector<int>& candidates, const std::map<int, double>& distances,
    const std::vector<Frontier>& frontiers, int step, json* audit) {
  // True frontier-to-target distances, the noisy oracle's knowledge.
  auto oracle_distances = [&]() {
    std::map<int, double> out;
    for (int id : candidates) {
      const Frontier& f = frontiers[static_cast<std::size_t>(id)];
      out[id] = true_target_field_.at(representative_cell(f, belief_.cell_size()));
    }
    return out;
  };

  (*audit)["step"] = step;
  (*audit)["policy"] = policy_.to_string();
  json cand = json::array();
  for (int id : candidates) cand.push_back(id);
  (*audit)["candidate_ids"] = cand;
  json dist = json::object();
  for (const auto& [id, d] : distances) dist[std::to_string(id)] = d;
  (*audit)["distances"] = dist;

  switch (policy_.kind) {
    case PolicySpec::Kind::Consensus: {
      ExpertRecommendation s1, s2, s3;
      if (config_.experts.mode == ExpertMode::Oracle) {
        auto bank = noisy_oracle_bank(oracle_distances(), oracle_p_, policy_rng_);
        s1 = std::move(bank[0]);
        s2 = std::move(bank[1]);
        s3 = std::move(bank[2]);
      } else {
        std::vector<FrontierContext> contexts;
        for (int id : candidates)
          contexts.push_back(frontier_context(belief_,
                                              frontiers[static_cast<std::size_t>(id)],
                                              config_.mapping.context_radius));
        if (config_.experts.mode == ExpertMode::Rules) {
          s1 = o2f_recommend(affinity_, target_, contexts, config_.experts.threshold,
                             config_.experts.top_k);
          s2 = r2f_recommend(affinity_, target_, contexts, config_.experts.threshold,
                             config_.experts.top_k);
          s3 = sle_recommend(affinity_, target_, contexts, config_.experts.sle_weights,
                             config_.experts.threshold, config_.experts.top_k);
        } else {  // ExpertMode::Http
          std::vector<Frontier> cand_frontiers;
          for (int id : candidates)
            cand_frontiers.push_back(frontiers[static_cast<std::size_t>(id)]);
          std::vector<std::string> events;
          auto call = [&](const char* name) {
            auto it = config_.experts.http_endpoints.find(name);
            if (it == config_.experts.http_endpoints.end()) {
              events.push_back(std::string(name) + ": no endpoint configured");
              return ExpertRecommendation{name, {}};
            }
            return http_expert_recommend(it->second, target_, cand_frontiers,
                                         contexts, belief_.explored_fraction(),
                                         config_.experts.http_timeout_ms, &events);
          };
          s1 = call("o2f");
          s2 = call("r2f");
          s3 = call("sle");
          for (const std::string& ev : events) {
            json rec{{"step", step}, {"event", "expert_failure"}, {"message", ev}};
            if (trace_) trace_->audit_jsonl += rec.dump() + "\n";
          }
        }
      }
      auto outcome = cdm_decide(s1.frontier_ids, s2.frontier_ids, s3.frontier_ids,
                                candidates, distances);
      if (!outcome) return std::nullopt;
      (*audit)["s1"] = set_json(s1.frontier_ids);
      (*audit)["s2"] = set_json(s2.frontier_ids);
      (*audit)["s3"] = set_json(s3.frontier_ids);
      (*audit)["tier"] = to_string(outcome->tier);
      (*audit)["consensus_set"] = set_json(outcome->consensus_set);
      (*audit)["chosen"] = outcome->chosen;
      return outcome->chosen;
    }
    case PolicySpec::Kind::Majority:
    case PolicySpec::Kind::SingleOracle: {
      const auto odist = oracle_distances();
      StochasticExpert expert = [&odist, this](Rng& rng) {
        return noisy_oracle_recommend(odist, oracle_p_, rng).frontier_ids;
      };
      const int k = policy_.kind == PolicySpec::Kind::Majority ? policy_.k : 1;
      auto chosen =
          majority_vote_baseline(expert, k, candidates, distances, policy_rng_);
      if (chosen) (*audit)["chosen"] = *chosen;
      return chosen;
    }
    case PolicySpec::Kind::Closest: {
      auto chosen = closest_frontier_baseline(candidates, distances);
      if (chosen) (*audit)["chosen"] = *chosen;
      return chosen;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Cell>> EpisodeRunner::plan_path() {
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (!have_plan_field_) build_plan_field();
    auto path = extract_path(plan_field_, agent_cell());
    if (path) {
      // Invalidate when a known obstacle sits on the path (field is stale).
      bool blocked = false;
      for (const Cell& c : *path)
        if (belief_.state(c) == CellState::Obstacle) {
          blocked = true;
          break;
        }
      if (!blocked) return path;
    }
    have_plan_field_ = false;  // rebuild once from the current belief
  }
  return std::nullopt;
}

void EpisodeRunner::write_step_record(int step, const Pose& pose, Action action,
                                      bool moved, json decision_audit) {
  if (!trace_) return;
  json rec;
  rec["step"] = step;
  rec["pose"] = {{"x", pose.x}, {"y", pose.y}, {"theta", pose.theta}};
  rec["action"] = to_string(action);
  rec["moved"] = moved;
  if (goal_.kind == Goal::Kind::None) {
    rec["goal"] = nullptr;
  } else {
    rec["goal"] = {
        {"kind", goal_.kind == Goal::Kind::Target ? "target" : "frontier"},
        {"cell", cell_json(goal_.cell)}};
  }
  if (!decision_audit.is_null()) rec["decision_audit"] = decision_audit;
  trace_->steps_jsonl += rec.dump() + "\n";
}

EpisodeResult EpisodeRunner::run() {
  const double h = env_.cell_size();
  int step_count = 0;

  for (int t = 0; t < spec_.max_steps && !ended_; ++t) {
    const Observation obs = observe(env_, pose_, config_.sensor, sensor_rng_);
    for (const auto& vc : obs.visible)
      if (vc.state == CellState::Free && env_.object_label(vc.cell) == target_)
        ctx_.target_ever_visible = true;
    for (const auto& r : obs.object_reports)
      if (r.label == target_ && env_.object_label(r.cell) == target_)
        ctx_.target_truly_reported = true;
    belief_.integrate(obs);

    const bool target_known = !belief_.cells_with_object(target_).empty();
    const bool need_decision =
        goal_.kind == Goal::Kind::None ||
        (goal_.kind == Goal::Kind::Frontier &&
         (target_known || !belief_.is_frontier_cell(goal_.cell) ||
          steps_since_decision_ >= config_.harness.replan_interval)) ||
        (goal_.kind == Goal::Kind::Target &&
         steps_since_decision_ >= config_.harness.replan_interval);

    json decision_audit;
    if (need_decision) {
      pending_audit_ = json();
      if (!decide(t)) break;
      decision_audit = std::move(pending_audit_);
      if (trace_ && !decision_audit.is_null())
        trace_->audit_jsonl += decision_audit.dump() + "\n";
    }

    std::optional<Action> action;
    if (goal_.kind == Goal::Kind::Target) {
      // Euclidean prefilter: geodesic can only be larger.
      const Vec2 goal_center = cell_center(goal_.cell, h);
      if ((goal_center - pose_.position()).norm() <=
          spec_.success_radius + h) {
        const auto d = geodesic_distance(belief_, agent_cell(), {goal_.cell});
        if (d && *d <= spec_.success_radius + kEps) action = Action::Stop;
      }
    }

    if (!action) {
      auto path = plan_path();
      while (!path && !ended_) {
        if (goal_.kind == Goal::Kind::Target) {
          end(StopReason::Stuck);
          break;
        }
        // Frontier unreachable under planning rules: drop it and re-decide.
        int failed_id = -1;
        const auto frontiers =
            extract_frontiers(belief_, config_.mapping.min_frontier_size);
        for (const Frontier& f : frontiers)
          if (std::find(f.cells.begin(), f.cells.end(), goal_.cell) != f.cells.end())
            failed_id = f.id;
        if (failed_id < 0) {
          end(StopReason::Stuck);
          break;
        }
        excluded_.insert(failed_id);
        pending_audit_ = json();
        if (!decide_frontier(t)) break;
        if (trace_ && !pending_audit_.is_null())
          trace_->audit_jsonl += pending_audit_.dump() + "\n";
        decision_audit = pending_audit_;
        have_plan_field_ = false;
        path = plan_path();
      }
      if (ended_) break;
      if (path->size() == 1 && goal_.kind == Goal::Kind::Frontier &&
          path->front() == agent_cell()) {
        // Standing on the goal frontier with unknown space still behind
        // it (typically outside the FOV): spin to scan instead of pushing
        // into whatever is ahead.
        action = Action::TurnLeft;
      } else {
        action = next_action(pose_, *path, config_.actions, h);
      }
    }

    const Pose before = pose_;
    const StepResult sr = step(env_, pose_, *action, config_.actions);
    write_step_record(t, before, *action, sr.moved, decision_audit);
    pose_ = sr.pose;
    ++step_count;
    ++steps_since_decision_;

    if (*action == Action::Forward) {
      if (sr.moved) {
        result_.path_length += config_.actions.forward_step;
        blocked_streak_ = 0;
      } else if (++blocked_streak_ >= 8) {
        end(StopReason::Stuck);  // repeated collisions with no progress
      }
    } else {
      blocked_streak_ = 0;
    }

    if (*action == Action::Stop) {
      const double true_d = true_target_field_.at(agent_cell());
      end(true_d <= spec_.success_radius + kEps ? StopReason::StoppedNearTarget
                                                : StopReason::StoppedFar);
    }
  }

  if (!ended_) reason_ = StopReason::BudgetExhausted;

  result_.steps = step_count;
  result_.stop_reason = reason_;
  result_.success = reason_ == StopReason::StoppedNearTarget;

  if (result_.success) {
    result_.error_class = ErrorClass::None;
  } else {
    ctx_.stop_reason = reason_;
    ctx_.goal_was_target = goal_.kind == Goal::Kind::Target;
    ctx_.goal_cell_is_true_target =
        ctx_.goal_was_target && env_.object_label(goal_.cell) == target_;
    result_.error_class = classify_error(ctx_);
  }
  return result_;
}

}  // namespace

EpisodeResult run_episode(const Scenario& scenario, const EpisodeSpec& spec,
                          const PolicySpec& policy, const RunConfig& config,
                          EpisodeTrace* trace, BeliefMap* final_belief) {
  config.validate();
  EpisodeRunner runner(scenario, spec, policy, config, trace);
  EpisodeResult result = runner.run();
  if (final_belief) *final_belief = runner.belief();

  // Shortest path from the start to the success region, on ground truth.
  const BeliefMap truth = BeliefMap::from_environment(scenario.env);
  const std::string target = spec.target.empty() ? scenario.target : spec.target;
  const auto d = geodesic_distance(
      truth, cell_of(scenario.start.position(), scenario.env.cell_size()),
      scenario.env.target_positions(target));
  result.shortest_path =
      d ? std::max(0.0, *d - spec.success_radius)
        : std::numeric_limits<double>::infinity();
  return result;
}

}  // namespace ognav
