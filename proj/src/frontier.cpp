#include "ognav/frontier.hpp"

#include "ognav/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>

namespace ognav {

std::vector<Frontier> extract_frontiers(const BeliefMap& map,
                                        int min_frontier_size) {
  const int w = map.width(), h = map.height();
  std::vector<std::uint8_t> frontier_mask(static_cast<std::size_t>(w) * h, 0);
  auto idx = [w](const Cell& c) { return static_cast<std::size_t>(c.y) * w + c.x; };

  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (map.is_frontier_cell({x, y})) frontier_mask[idx({x, y})] = 1;

  // 8-connected components by BFS, scanned row-major so that each
  // component is discovered at its smallest cell.
  std::vector<Frontier> frontiers;
  std::vector<std::uint8_t> visited(frontier_mask.size(), 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const Cell seed{x, y};
      if (!frontier_mask[idx(seed)] || visited[idx(seed)]) continue;
      Frontier f;
      std::deque<Cell> queue{seed};
      visited[idx(seed)] = 1;
      while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop_front();
        f.cells.push_back(c);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const Cell n{c.x + dx, c.y + dy};
            if (n.x < 0 || n.x >= w || n.y < 0 || n.y >= h) continue;
            if (frontier_mask[idx(n)] && !visited[idx(n)]) {
              visited[idx(n)] = 1;
              queue.push_back(n);
            }
          }
      }
      if (static_cast<int>(f.cells.size()) < min_frontier_size) continue;
      std::sort(f.cells.begin(), f.cells.end());
      Vec2 sum{0.0, 0.0};
      for (const Cell& c : f.cells) sum += cell_center(c, map.cell_size());
      f.centroid = sum / static_cast<double>(f.cells.size());
      frontiers.push_back(std::move(f));
    }

  for (std::size_t i = 0; i < frontiers.size(); ++i)
    frontiers[i].id = static_cast<int>(i);
  return frontiers;
}

FrontierContext frontier_context(const BeliefMap& map, const Frontier& f,
                                 double context_radius) {
  FrontierContext ctx;
  ctx.frontier_id = f.id;
  const double h = map.cell_size();

  auto within_radius = [&](const Cell& c) {
    return (cell_center(c, h) - f.centroid).norm() <= context_radius;
  };

  std::map<std::string, int> objects;
  for (const auto& [cell, counts] : map.object_layer()) {
    if (!within_radius(cell)) continue;
    for (const auto& [label, n] : counts) objects[label] += n;
  }
  ctx.nearby_objects.assign(objects.begin(), objects.end());

  // Room label: plurality vote over the frontier's cells and their free
  // neighbors; ties break to the lexicographically smallest label.
  std::map<std::string, int> votes;
  auto add_votes = [&](const Cell& c) {
    auto it = map.room_votes().find(c);
    if (it == map.room_votes().end()) return;
    for (const auto& [label, n] : it->second) votes[label] += n;
  };
  std::set<Cell> voters(f.cells.begin(), f.cells.end());
  for (const Cell& c : f.cells)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const Cell n{c.x + dx, c.y + dy};
        if (map.in_bounds(n) && map.state(n) == CellState::Free) voters.insert(n);
      }
  for (const Cell& c : voters) add_votes(c);
  int best = 0;
  for (const auto& [label, n] : votes)  // map order = lexicographic
    if (n > best) {
      best = n;
      ctx.room_label = label;
    }

  // Density: known cells within the radius that hold any object report.
  const int r_cells = static_cast<int>(std::ceil(context_radius / h)) + 1;
  const Cell center = cell_of(f.centroid, h);
  int known = 0, with_objects = 0;
  for (int y = center.y - r_cells; y <= center.y + r_cells; ++y)
    for (int x = center.x - r_cells; x <= center.x + r_cells; ++x) {
      const Cell c{x, y};
      if (!map.in_bounds(c) || !within_radius(c)) continue;
      if (map.state(c) == CellState::Unknown) continue;
      ++known;
      auto it = map.object_layer().find(c);
      if (it != map.object_layer().end() && !it->second.empty()) ++with_objects;
    }
  ctx.local_density = known > 0 ? static_cast<double>(with_objects) / known : 0.0;
  return ctx;
}

Cell representative_cell(const Frontier& f, double cell_size) {
  Cell best = f.cells.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (const Cell& c : f.cells) {
    const double d = (cell_center(c, cell_size) - f.centroid).norm();
    if (d < best_d - 1e-12) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace ognav
