#include "ognav/belief_map.hpp"

#include "ognav/environment.hpp"
#include "ognav/error.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace ognav {

using nlohmann::json;

BeliefMap::BeliefMap(int width, int height, double cell_size)
    : width_(width), height_(height), cell_size_(cell_size) {
  state_ = GridU8::Constant(height, width,
                            static_cast<std::uint8_t>(CellState::Unknown));
}

BeliefMap BeliefMap::from_environment(const Environment& env) {
  BeliefMap map(env.width(), env.height(), env.cell_size());
  for (int y = 0; y < env.height(); ++y)
    for (int x = 0; x < env.width(); ++x)
      map.set_state({x, y}, env.is_obstacle({x, y}) ? CellState::Obstacle
                                                    : CellState::Free);
  return map;
}

void BeliefMap::integrate(const Observation& obs) {
  auto check = [&](const Cell& c, const char* what) {
    if (!in_bounds(c))
      throw MappingError(std::string(what) + " cell (" + std::to_string(c.x) +
                         "," + std::to_string(c.y) +
                         ") outside the map: sensor/world mismatch");
  };
  for (const auto& vc : obs.visible) check(vc.cell, "visible");
  for (const auto& r : obs.object_reports) check(r.cell, "object report");
  for (const auto& r : obs.room_reports) check(r.cell, "room report");

  for (const auto& vc : obs.visible) {
    // Geometry is noiseless: a known state never flips. A conflicting
    // re-observation would indicate a world bug, so keep first-write-wins.
    if (state(vc.cell) == CellState::Unknown) set_state(vc.cell, vc.state);
  }
  for (const auto& r : obs.object_reports) object_layer_[r.cell][r.label]++;
  for (const auto& r : obs.room_reports) room_votes_[r.cell][r.label]++;
}

std::vector<Cell> BeliefMap::cells_with_object(const std::string& label) const {
  std::vector<Cell> out;
  for (const auto& [cell, counts] : object_layer_)
    if (counts.count(label)) out.push_back(cell);
  return out;
}

bool BeliefMap::is_frontier_cell(const Cell& c) const {
  if (!in_bounds(c) || state(c) != CellState::Free) return false;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const Cell n{c.x + dx, c.y + dy};
      if (in_bounds(n) && state(n) == CellState::Unknown) return true;
    }
  return false;
}

std::string BeliefMap::to_text() const {
  std::string out;
  out.reserve((width_ + 1) * height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      switch (state({x, y})) {
        case CellState::Unknown: out += '?'; break;
        case CellState::Free: out += '.'; break;
        case CellState::Obstacle: out += '#'; break;
      }
    }
    out += '\n';
  }
  return out;
}

std::string BeliefMap::semantic_json() const {
  json doc;
  json objects = json::array();
  for (const auto& [cell, counts] : object_layer_)
    for (const auto& [label, n] : counts)
      objects.push_back({{"cell", {cell.x, cell.y}}, {"label", label}, {"count", n}});
  json rooms = json::array();
  for (const auto& [cell, votes] : room_votes_) {
    json v = json::object();
    for (const auto& [label, n] : votes) v[label] = n;
    rooms.push_back({{"cell", {cell.x, cell.y}}, {"votes", v}});
  }
  doc["objects"] = objects;
  doc["rooms"] = rooms;
  return doc.dump(2) + "\n";
}

}  // namespace ognav
