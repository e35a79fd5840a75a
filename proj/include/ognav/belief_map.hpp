#pragma once

#include "ognav/types.hpp"
#include "ognav/world.hpp"

#include <map>
#include <string>
#include <vector>

namespace ognav {

class Environment;

/// The agent's accumulated map: cell states plus semantic count layers.
/// Cell states are monotone out of Unknown and never flip afterwards.
class BeliefMap {
 public:
  using CountsByCell = std::map<Cell, std::map<std::string, int>>;

  BeliefMap(int width, int height, double cell_size);

  /// Fully-known copy of an environment (used by distance queries on
  /// ground truth and by the field export CLI).
  static BeliefMap from_environment(const Environment& env);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }

  bool in_bounds(const Cell& c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  CellState state(const Cell& c) const {
    return static_cast<CellState>(state_(c.y, c.x));
  }
  void set_state(const Cell& c, CellState s) {
    const CellState prev = state(c);
    if (prev == CellState::Unknown && s != CellState::Unknown) ++known_cells_;
    if (prev != CellState::Unknown && s == CellState::Unknown) --known_cells_;
    state_(c.y, c.x) = static_cast<std::uint8_t>(s);
  }

  /// Write an observation into the map. Out-of-bounds cells in the
  /// observation signal a sensor/world mismatch and throw MappingError.
  void integrate(const Observation& obs);

  const CountsByCell& object_layer() const { return object_layer_; }
  const CountsByCell& room_votes() const { return room_votes_; }

  /// Cells where `label` has been reported at least once, sorted row-major.
  std::vector<Cell> cells_with_object(const std::string& label) const;

  /// Free cell 8-adjacent to at least one Unknown cell.
  bool is_frontier_cell(const Cell& c) const;

  int known_cells() const { return known_cells_; }
  double explored_fraction() const {
    return static_cast<double>(known_cells_) / (width_ * height_);
  }

  /// Plain-text snapshot, one row per line: '?' unknown, '.' free, '#' obstacle.
  std::string to_text() const;
  /// Semantic layers as a JSON document string (objects + room votes).
  std::string semantic_json() const;

 private:
  int width_;
  int height_;
  double cell_size_;
  GridU8 state_;
  CountsByCell object_layer_;
  CountsByCell room_votes_;
  int known_cells_ = 0;
};

}  // namespace ognav
