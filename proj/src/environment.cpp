#include "ognav/environment.hpp"

#include "ognav/error.hpp"
#include "ognav/geometry.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ognav {

using nlohmann::json;

Environment::Environment(int width, int height, double cell_size)
    : width_(width), height_(height), cell_size_(cell_size) {
  if (width < 3 || height < 3)
    throw ScenarioError("grid must be at least 3x3 (closed boundary)");
  if (!(cell_size > 0.0)) throw ScenarioError("cell_size must be > 0");
  occupancy_ = GridU8::Zero(height, width);
  room_id_ = GridI32::Constant(height, width, -1);
  object_id_ = GridI32::Constant(height, width, -1);
}

const std::string& Environment::room_label(const Cell& c) const {
  static const std::string none;
  const int id = room_id_(c.y, c.x);
  return id >= 0 ? room_vocab_[id] : none;
}

std::string Environment::object_label(const Cell& c) const {
  const int id = object_id_(c.y, c.x);
  return id >= 0 ? object_vocab_[id] : std::string();
}

const std::vector<Cell>& Environment::target_positions(
    const std::string& label) const {
  static const std::vector<Cell> none;
  auto it = target_positions_.find(label);
  return it == target_positions_.end() ? none : it->second;
}

void Environment::index_objects() {
  target_positions_.clear();
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x) {
      const int id = object_id_(y, x);
      if (id >= 0) target_positions_[object_vocab_[id]].push_back({x, y});
    }
}

void Environment::validate() const {
  for (int x = 0; x < width_; ++x)
    if (!is_obstacle({x, 0}) || !is_obstacle({x, height_ - 1}))
      throw ScenarioError("grid boundary must be obstacle (row " +
                          std::to_string(x) + ")");
  for (int y = 0; y < height_; ++y)
    if (!is_obstacle({0, y}) || !is_obstacle({width_ - 1, y}))
      throw ScenarioError("grid boundary must be obstacle (col " +
                          std::to_string(y) + ")");

  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x) {
      const Cell c{x, y};
      if (is_free(c) && room_id_(y, x) < 0)
        throw ScenarioError("free cell (" + std::to_string(x) + "," +
                            std::to_string(y) + ") has no room label");
      if (is_obstacle(c) && object_id_(y, x) >= 0)
        throw ScenarioError("object placed on obstacle cell (" +
                            std::to_string(x) + "," + std::to_string(y) + ")");
    }

  // target_positions must equal the set of cells holding each label
  std::map<std::string, std::vector<Cell>> scan;
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x) {
      const int id = object_id_(y, x);
      if (id >= 0) scan[object_vocab_[id]].push_back({x, y});
    }
  if (scan != target_positions_)
    throw ScenarioError("object index inconsistent with object grid");
}

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ScenarioError(origin + ": " + what);
}

int vocab_id(std::vector<std::string>& vocab, const std::string& label) {
  auto it = std::find(vocab.begin(), vocab.end(), label);
  if (it != vocab.end()) return static_cast<int>(it - vocab.begin());
  vocab.push_back(label);
  return static_cast<int>(vocab.size()) - 1;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("invalid JSON: ") + e.what());
  }

  if (!doc.is_object()) fail(origin, "top level must be an object");
  for (const char* key : {"cell_size", "grid", "rooms", "objects", "start", "target"})
    if (!doc.contains(key)) fail(origin, std::string("missing field \"") + key + "\"");

  const double cell_size = doc["cell_size"].is_number()
                               ? doc["cell_size"].get<double>()
                               : (fail(origin, "cell_size must be a number"), 0.0);
  if (!(cell_size > 0.0)) fail(origin, "cell_size must be > 0");

  const auto& grid = doc["grid"];
  if (!grid.is_array() || grid.empty()) fail(origin, "grid must be a non-empty array");
  const int height = static_cast<int>(grid.size());
  const int width = static_cast<int>(grid[0].get<std::string>().size());

  Environment env(width, height, cell_size);
  for (int y = 0; y < height; ++y) {
    if (!grid[y].is_string()) fail(origin, "grid row " + std::to_string(y) + " must be a string");
    const std::string row = grid[y].get<std::string>();
    if (static_cast<int>(row.size()) != width)
      fail(origin, "grid row " + std::to_string(y) + " has length " +
                       std::to_string(row.size()) + ", expected " + std::to_string(width));
    for (int x = 0; x < width; ++x) {
      if (row[x] == '#') env.set_obstacle({x, y}, true);
      else if (row[x] == '.') env.set_obstacle({x, y}, false);
      else fail(origin, "grid row " + std::to_string(y) + " col " + std::to_string(x) +
                            ": unexpected character '" + std::string(1, row[x]) + "'");
    }
  }

  if (!doc["rooms"].is_object()) fail(origin, "rooms must be an object");
  for (const auto& [label, rects] : doc["rooms"].items()) {
    const int id = vocab_id(env.room_vocab(), label);
    if (!rects.is_array()) fail(origin, "rooms[\"" + label + "\"] must be an array of [x,y,w,h]");
    for (const auto& r : rects) {
      if (!r.is_array() || r.size() != 4)
        fail(origin, "rooms[\"" + label + "\"]: rectangle must be [x,y,w,h]");
      const int rx = r[0].get<int>(), ry = r[1].get<int>();
      const int rw = r[2].get<int>(), rh = r[3].get<int>();
      if (rw <= 0 || rh <= 0 || rx < 0 || ry < 0 || rx + rw > width || ry + rh > height)
        fail(origin, "rooms[\"" + label + "\"]: rectangle out of bounds");
      for (int y = ry; y < ry + rh; ++y)
        for (int x = rx; x < rx + rw; ++x) {
          const Cell c{x, y};
          if (!env.is_free(c)) continue;  // labels apply to free cells only
          const int prev = env.room_id(c);
          if (prev >= 0 && prev != id)
            fail(origin, "cell (" + std::to_string(x) + "," + std::to_string(y) +
                             ") assigned to both \"" + env.room_vocab()[prev] +
                             "\" and \"" + label + "\"");
          env.set_room(c, id);
        }
    }
  }

  if (!doc["objects"].is_array()) fail(origin, "objects must be an array");
  int obj_index = 0;
  for (const auto& o : doc["objects"]) {
    const std::string where = "objects[" + std::to_string(obj_index++) + "]";
    if (!o.is_object() || !o.contains("label") || !o.contains("x") || !o.contains("y"))
      fail(origin, where + " must have label, x, y");
    const Cell c{o["x"].get<int>(), o["y"].get<int>()};
    if (!env.in_bounds(c)) fail(origin, where + ": cell out of bounds");
    if (!env.is_free(c)) fail(origin, where + ": cell is an obstacle");
    if (env.object_id(c) >= 0) fail(origin, where + ": cell already holds an object");
    env.set_object(c, vocab_id(env.object_vocab(), o["label"].get<std::string>()));
  }
  env.index_objects();

  const auto& st = doc["start"];
  if (!st.is_object() || !st.contains("x") || !st.contains("y") || !st.contains("theta"))
    fail(origin, "start must have x, y, theta");
  Pose start{st["x"].get<double>(), st["y"].get<double>(),
             wrap_angle(st["theta"].get<double>())};
  const Cell start_cell = cell_of(start.position(), cell_size);
  if (!env.in_bounds(start_cell) || !env.is_free(start_cell))
    fail(origin, "start pose is not inside a free cell");

  const std::string target = doc["target"].get<std::string>();
  if (env.target_positions(target).empty())
    fail(origin, "target \"" + target + "\" does not appear in objects");

  env.validate();

  Scenario scenario{std::move(env), start, target, origin};
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::string scenario_to_json(const Scenario& s) {
  const Environment& env = s.env;
  json doc;
  doc["cell_size"] = env.cell_size();

  std::vector<std::string> rows;
  for (int y = 0; y < env.height(); ++y) {
    std::string row(env.width(), '.');
    for (int x = 0; x < env.width(); ++x)
      if (env.is_obstacle({x, y})) row[x] = '#';
    rows.push_back(row);
  }
  doc["grid"] = rows;

  // one 1x1 rectangle per free cell, merged into per-label horizontal runs
  json rooms = json::object();
  for (int y = 0; y < env.height(); ++y) {
    int x = 0;
    while (x < env.width()) {
      const Cell c{x, y};
      if (!env.is_free(c) || env.room_id(c) < 0) {
        ++x;
        continue;
      }
      const int id = env.room_id(c);
      int run = 1;
      while (x + run < env.width() && env.is_free({x + run, y}) &&
             env.room_id({x + run, y}) == id)
        ++run;
      const std::string& label = env.room_vocab()[id];
      if (!rooms.contains(label)) rooms[label] = json::array();
      rooms[label].push_back({x, y, run, 1});
      x += run;
    }
  }
  doc["rooms"] = rooms;

  json objects = json::array();
  for (int y = 0; y < env.height(); ++y)
    for (int x = 0; x < env.width(); ++x) {
      const Cell c{x, y};
      if (env.object_id(c) >= 0)
        objects.push_back({{"label", env.object_label(c)}, {"x", x}, {"y", y}});
    }
  doc["objects"] = objects;

  doc["start"] = {{"x", s.start.x}, {"y", s.start.y}, {"theta", s.start.theta}};
  doc["target"] = s.target;
  return doc.dump(2) + "\n";
}

}  // namespace ognav
