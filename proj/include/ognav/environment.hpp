#pragma once

#include "ognav/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace ognav {

/// Ground-truth world: static occupancy plus room and object labels.
/// Immutable after load; safe to share across episodes and threads.
class Environment {
 public:
  Environment(int width, int height, double cell_size);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }

  bool in_bounds(const Cell& c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  bool is_obstacle(const Cell& c) const { return occupancy_(c.y, c.x) != 0; }
  bool is_free(const Cell& c) const { return occupancy_(c.y, c.x) == 0; }

  void set_obstacle(const Cell& c, bool obstacle) {
    occupancy_(c.y, c.x) = obstacle ? 1 : 0;
  }
  void set_room(const Cell& c, int room_id) { room_id_(c.y, c.x) = room_id; }
  void set_object(const Cell& c, int object_id) {
    object_id_(c.y, c.x) = object_id;
  }

  int room_id(const Cell& c) const { return room_id_(c.y, c.x); }
  int object_id(const Cell& c) const { return object_id_(c.y, c.x); }
  const std::string& room_label(const Cell& c) const;
  /// Empty string when the cell holds no object.
  std::string object_label(const Cell& c) const;

  std::vector<std::string>& object_vocab() { return object_vocab_; }
  std::vector<std::string>& room_vocab() { return room_vocab_; }
  const std::vector<std::string>& object_vocab() const { return object_vocab_; }
  const std::vector<std::string>& room_vocab() const { return room_vocab_; }

  /// Cells holding the given object label; empty vector if none.
  const std::vector<Cell>& target_positions(const std::string& label) const;
  const std::map<std::string, std::vector<Cell>>& all_target_positions() const {
    return target_positions_;
  }

  /// Rebuild target_positions from the object grid.
  void index_objects();

  /// Check all type invariants: closed boundary, room coverage of free
  /// cells, object index consistency. Throws ScenarioError.
  void validate() const;

 private:
  int width_;
  int height_;
  double cell_size_;
  GridU8 occupancy_;    // 0 free, 1 obstacle
  GridI32 room_id_;     // index into room_vocab_, -1 none
  GridI32 object_id_;   // index into object_vocab_, -1 none
  std::vector<std::string> object_vocab_;
  std::vector<std::string> room_vocab_;
  std::map<std::string, std::vector<Cell>> target_positions_;
};

/// One loadable episode world: environment, start pose and target label.
struct Scenario {
  Environment env;
  Pose start;
  std::string target;
  std::string name;
};

/// Parse a scenario JSON document. `origin` names the source in
/// diagnostics. Throws ScenarioError on any inconsistency.
Scenario parse_scenario(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);

/// Serialize back to the scenario document format (deterministic bytes).
std::string scenario_to_json(const Scenario& s);

}  // namespace ognav
