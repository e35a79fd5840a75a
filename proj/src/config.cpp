#include "ognav/config.hpp"

#include "ognav/error.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace ognav {

using nlohmann::json;

void RunConfig::validate() const {
  sensor.validate();
  actions.validate();
  experts.sle_weights.validate();
  if (mapping.min_frontier_size < 1)
    throw ConfigError("mapping.min_frontier_size must be >= 1");
  if (!(mapping.context_radius > 0.0))
    throw ConfigError("mapping.context_radius must be > 0");
  if (!(experts.threshold >= 0.0 && experts.threshold <= 1.0))
    throw ConfigError("experts.threshold must be in [0, 1]");
  if (experts.top_k < 1) throw ConfigError("experts.top_k must be >= 1");
  if (!(experts.oracle_p >= 0.0 && experts.oracle_p <= 1.0))
    throw ConfigError("experts.oracle_p must be in [0, 1]");
  if (harness.max_steps < 1) throw ConfigError("harness.max_steps must be >= 1");
  if (!(harness.success_radius > 0.0))
    throw ConfigError("harness.success_radius must be > 0");
  if (harness.replan_interval < 1)
    throw ConfigError("harness.replan_interval must be >= 1");
}

AffinityTable RunConfig::load_affinity() const {
  if (experts.affinity_path.empty()) return default_affinity_table();
  return AffinityTable::load(experts.affinity_path);
}

namespace {

void get(const json& obj, const char* key, double& out) {
  if (obj.contains(key)) out = obj[key].get<double>();
}
void get(const json& obj, const char* key, int& out) {
  if (obj.contains(key)) out = obj[key].get<int>();
}
void get(const json& obj, const char* key, bool& out) {
  if (obj.contains(key)) out = obj[key].get<bool>();
}
void get(const json& obj, const char* key, std::string& out) {
  if (obj.contains(key)) out = obj[key].get<std::string>();
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");

  RunConfig cfg;
  try {
    if (doc.contains("sensor")) {
      const json& s = doc["sensor"];
      get(s, "fov", cfg.sensor.fov);
      get(s, "max_range", cfg.sensor.max_range);
      get(s, "n_rays", cfg.sensor.n_rays);
      get(s, "det_tp", cfg.sensor.det_tp);
      get(s, "det_fp", cfg.sensor.det_fp);
      get(s, "room_acc", cfg.sensor.room_acc);
    }
    if (doc.contains("actions")) {
      const json& a = doc["actions"];
      get(a, "forward_step", cfg.actions.forward_step);
      get(a, "turn_angle", cfg.actions.turn_angle);
    }
    if (doc.contains("mapping")) {
      const json& m = doc["mapping"];
      get(m, "min_frontier_size", cfg.mapping.min_frontier_size);
      get(m, "context_radius", cfg.mapping.context_radius);
    }
    if (doc.contains("experts")) {
      const json& e = doc["experts"];
      std::string mode = "rules";
      get(e, "mode", mode);
      if (mode == "rules") cfg.experts.mode = ExpertMode::Rules;
      else if (mode == "oracle") cfg.experts.mode = ExpertMode::Oracle;
      else if (mode == "http") cfg.experts.mode = ExpertMode::Http;
      else throw ConfigError(origin + ": experts.mode must be rules|oracle|http");
      get(e, "threshold", cfg.experts.threshold);
      get(e, "top_k", cfg.experts.top_k);
      get(e, "affinity_table", cfg.experts.affinity_path);
      get(e, "oracle_p", cfg.experts.oracle_p);
      get(e, "http_timeout_ms", cfg.experts.http_timeout_ms);
      if (e.contains("sle_weights")) {
        const json& w = e["sle_weights"];
        if (!w.is_array() || w.size() != 3)
          throw ConfigError(origin + ": experts.sle_weights must be [w_obj, w_room, w_density]");
        cfg.experts.sle_weights = {w[0].get<double>(), w[1].get<double>(),
                                   w[2].get<double>()};
      }
      if (e.contains("http_endpoints"))
        for (const auto& [name, url] : e["http_endpoints"].items())
          cfg.experts.http_endpoints[name] = url.get<std::string>();
    }
    if (doc.contains("planner")) {
      get(doc["planner"], "inflate_obstacles", cfg.planner.inflate_obstacles);
    }
    if (doc.contains("harness")) {
      const json& h = doc["harness"];
      get(h, "max_steps", cfg.harness.max_steps);
      get(h, "success_radius", cfg.harness.success_radius);
      get(h, "replan_interval", cfg.harness.replan_interval);
    }
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

AffinityTable default_affinity_table() {
  AffinityTable t;
  t.default_score = 0.1;

  // object co-occurrence cues, target <- context object
  auto obj = [&](const char* target, std::initializer_list<std::pair<const char*, double>> rows) {
    for (const auto& [label, s] : rows) t.set_object_affinity(label, target, s);
  };
  obj("alarm_clock", {{"bed", 0.85}, {"nightstand", 0.8}, {"lamp", 0.6}, {"book", 0.4}});
  obj("apple", {{"counter", 0.8}, {"bowl", 0.7}, {"fridge", 0.75}, {"table", 0.5}});
  obj("baseball_bat", {{"bed", 0.5}, {"shelf", 0.45}, {"box", 0.4}});
  obj("basketball", {{"bed", 0.45}, {"shelf", 0.5}, {"box", 0.45}});
  obj("bowl", {{"counter", 0.8}, {"table", 0.7}, {"fridge", 0.6}, {"sink", 0.6}});
  obj("garbage_can", {{"sink", 0.6}, {"counter", 0.55}, {"desk", 0.5}, {"toilet", 0.55}});
  obj("house_plant", {{"sofa", 0.6}, {"window", 0.55}, {"shelf", 0.6}, {"table", 0.5}});
  obj("laptop", {{"desk", 0.9}, {"chair", 0.7}, {"table", 0.6}, {"sofa", 0.5}, {"book", 0.55}});
  obj("mug", {{"counter", 0.75}, {"desk", 0.65}, {"table", 0.6}, {"sink", 0.6}});
  obj("spray_bottle", {{"sink", 0.8}, {"toilet", 0.7}, {"counter", 0.6}});
  obj("television", {{"sofa", 0.9}, {"shelf", 0.6}, {"table", 0.5}});
  obj("vase", {{"shelf", 0.7}, {"table", 0.65}, {"sofa", 0.5}, {"window", 0.45}});

  // room-type cues, target <- room label
  auto room = [&](const char* target, std::initializer_list<std::pair<const char*, double>> rows) {
    for (const auto& [label, s] : rows) t.set_room_affinity(label, target, s);
  };
  room("alarm_clock", {{"bedroom", 0.9}, {"living_room", 0.3}, {"office", 0.25},
                       {"kitchen", 0.05}, {"bathroom", 0.05}, {"hallway", 0.05}});
  room("apple", {{"kitchen", 0.9}, {"living_room", 0.25}, {"bedroom", 0.1},
                 {"office", 0.1}, {"bathroom", 0.02}, {"hallway", 0.05}});
  room("baseball_bat", {{"bedroom", 0.7}, {"hallway", 0.3}, {"living_room", 0.25},
                        {"office", 0.1}, {"kitchen", 0.05}, {"bathroom", 0.02}});
  room("basketball", {{"bedroom", 0.7}, {"hallway", 0.35}, {"living_room", 0.3},
                      {"office", 0.1}, {"kitchen", 0.05}, {"bathroom", 0.02}});
  room("bowl", {{"kitchen", 0.9}, {"living_room", 0.3}, {"office", 0.15},
                {"bedroom", 0.1}, {"bathroom", 0.05}, {"hallway", 0.02}});
  room("garbage_can", {{"kitchen", 0.7}, {"bathroom", 0.6}, {"office", 0.5},
                       {"bedroom", 0.3}, {"living_room", 0.3}, {"hallway", 0.2}});
  room("house_plant", {{"living_room", 0.8}, {"hallway", 0.4}, {"office", 0.4},
                       {"bedroom", 0.3}, {"kitchen", 0.2}, {"bathroom", 0.1}});
  room("laptop", {{"office", 0.9}, {"living_room", 0.5}, {"bedroom", 0.4},
                  {"kitchen", 0.1}, {"bathroom", 0.02}, {"hallway", 0.02}});
  room("mug", {{"kitchen", 0.8}, {"office", 0.6}, {"living_room", 0.4},
               {"bedroom", 0.2}, {"bathroom", 0.1}, {"hallway", 0.02}});
  room("spray_bottle", {{"bathroom", 0.85}, {"kitchen", 0.6}, {"hallway", 0.1},
                        {"bedroom", 0.05}, {"living_room", 0.05}, {"office", 0.05}});
  room("television", {{"living_room", 0.9}, {"bedroom", 0.5}, {"office", 0.2},
                      {"kitchen", 0.05}, {"bathroom", 0.02}, {"hallway", 0.02}});
  room("vase", {{"living_room", 0.7}, {"hallway", 0.4}, {"bedroom", 0.3},
                {"office", 0.25}, {"kitchen", 0.15}, {"bathroom", 0.05}});
  return t;
}

}  // namespace ognav
