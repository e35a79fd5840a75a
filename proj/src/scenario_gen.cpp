#include "ognav/scenario_gen.hpp"

#include "ognav/belief_map.hpp"
#include "ognav/error.hpp"
#include "ognav/fmm.hpp"
#include "ognav/geometry.hpp"
#include "ognav/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <vector>

namespace ognav {

namespace {

constexpr int kMinRoomDim = 4;
constexpr int kDoorWidth = 3;  // survives 1-cell obstacle inflation

const std::vector<std::string> kRoomVocab = {
    "bathroom", "bedroom", "hallway", "kitchen", "living_room", "office"};

const std::vector<std::string> kTargetCategories = {
    "alarm_clock", "apple",       "baseball_bat", "basketball",
    "bowl",        "garbage_can", "house_plant",  "laptop",
    "mug",         "spray_bottle", "television",  "vase"};

const std::map<std::string, std::vector<std::string>>& placement_table() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"bedroom",
       {"bed", "nightstand", "lamp", "alarm_clock", "baseball_bat", "basketball",
        "book"}},
      {"kitchen",
       {"counter", "fridge", "sink", "bowl", "apple", "mug", "garbage_can",
        "table"}},
      {"living_room",
       {"sofa", "television", "house_plant", "vase", "shelf", "table", "book"}},
      {"bathroom", {"toilet", "sink", "spray_bottle", "garbage_can"}},
      {"office", {"desk", "chair", "laptop", "book", "shelf", "mug", "garbage_can"}},
      {"hallway", {"shelf", "house_plant", "vase", "box"}},
  };
  return table;
}

struct Region {
  int x, y, w, h;  // free interior, walls excluded
  int area() const { return w * h; }
};

int rand_int(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

Scenario generate_scenario(const GenParams& params) {
  if (params.width < 8 || params.height < 8)
    throw ScenarioError("generator: grid must be at least 8x8");
  if (params.rooms < 1) throw ScenarioError("generator: rooms must be >= 1");
  if (!(params.object_density > 0.0))
    throw ScenarioError("generator: object_density must be > 0");

  Rng rng(derive_seed(params.seed, 0x6e));
  Environment env(params.width, params.height, params.cell_size);
  env.room_vocab() = kRoomVocab;

  // Closed boundary, free interior.
  for (int y = 0; y < params.height; ++y)
    for (int x = 0; x < params.width; ++x)
      env.set_obstacle({x, y}, x == 0 || y == 0 || x == params.width - 1 ||
                                   y == params.height - 1);

  // Recursive rectangular partition with door gaps. New walls keep one
  // cell of clearance from existing door cells so that every door stays
  // passable under planning inflation.
  std::set<Cell> door_margin;
  auto near_door = [&](const Cell& c) {
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx)
        if (door_margin.count({c.x + dx, c.y + dy})) return true;
    return false;
  };

  std::vector<Region> regions;   // finished rooms
  std::vector<Region> queue{{1, 1, params.width - 2, params.height - 2}};
  while (static_cast<int>(regions.size() + queue.size()) < params.rooms &&
         !queue.empty()) {
    int pick = 0;
    for (std::size_t i = 1; i < queue.size(); ++i)
      if (queue[i].area() > queue[static_cast<std::size_t>(pick)].area())
        pick = static_cast<int>(i);
    Region r = queue[static_cast<std::size_t>(pick)];
    queue.erase(queue.begin() + pick);

    auto valid_coords = [&](bool vertical) {
      std::vector<int> coords;
      const int extent = vertical ? r.w : r.h;
      for (int c = kMinRoomDim; c <= extent - 1 - kMinRoomDim; ++c) {
        bool ok = true;
        if (vertical) {
          for (int y = r.y - 1; y <= r.y + r.h && ok; ++y)
            if (near_door({r.x + c, y})) ok = false;
        } else {
          for (int x = r.x - 1; x <= r.x + r.w && ok; ++x)
            if (near_door({x, r.y + c})) ok = false;
        }
        if (ok) coords.push_back(c);
      }
      return coords;
    };

    bool vertical = r.w >= r.h;
    auto coords = valid_coords(vertical);
    if (coords.empty()) {
      vertical = !vertical;
      coords = valid_coords(vertical);
    }
    if (coords.empty()) {
      regions.push_back(r);  // cannot split without crowding a door
      continue;
    }
    const int c = coords[static_cast<std::size_t>(
        rand_int(rng, 0, static_cast<int>(coords.size()) - 1))];
    if (vertical) {
      const int wx = r.x + c;
      for (int y = r.y; y < r.y + r.h; ++y) env.set_obstacle({wx, y}, true);
      const int door_w = std::min(kDoorWidth, r.h);
      const int dy = rand_int(rng, r.y, r.y + r.h - door_w);
      for (int y = dy; y < dy + door_w; ++y) {
        env.set_obstacle({wx, y}, false);
        door_margin.insert({wx, y});
      }
      queue.push_back({r.x, r.y, c, r.h});
      queue.push_back({wx + 1, r.y, r.w - c - 1, r.h});
    } else {
      const int wy = r.y + c;
      for (int x = r.x; x < r.x + r.w; ++x) env.set_obstacle({x, wy}, true);
      const int door_w = std::min(kDoorWidth, r.w);
      const int dx = rand_int(rng, r.x, r.x + r.w - door_w);
      for (int x = dx; x < dx + door_w; ++x) {
        env.set_obstacle({x, wy}, false);
        door_margin.insert({x, wy});
      }
      queue.push_back({r.x, r.y, r.w, c});
      queue.push_back({r.x, wy + 1, r.w, r.h - c - 1});
    }
  }
  regions.insert(regions.end(), queue.begin(), queue.end());

  // Room labels per region; door cells inherit a neighbor's label below.
  std::vector<int> region_label(regions.size());
  for (std::size_t i = 0; i < regions.size(); ++i) {
    region_label[i] =
        rand_int(rng, 0, static_cast<int>(kRoomVocab.size()) - 1);
    for (int y = regions[i].y; y < regions[i].y + regions[i].h; ++y)
      for (int x = regions[i].x; x < regions[i].x + regions[i].w; ++x)
        if (env.is_free({x, y})) env.set_room({x, y}, region_label[i]);
  }
  // Flood labels into unlabeled free cells (door gaps).
  std::deque<Cell> flood;
  for (int y = 1; y < params.height - 1; ++y)
    for (int x = 1; x < params.width - 1; ++x)
      if (env.is_free({x, y}) && env.room_id({x, y}) >= 0) flood.push_back({x, y});
  while (!flood.empty()) {
    const Cell c = flood.front();
    flood.pop_front();
    const int dx4[] = {1, -1, 0, 0};
    const int dy4[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const Cell n{c.x + dx4[k], c.y + dy4[k]};
      if (env.in_bounds(n) && env.is_free(n) && env.room_id(n) < 0) {
        env.set_room(n, env.room_id(c));
        flood.push_back(n);
      }
    }
  }


  auto free_cells_in = [&](const Region& r) {
    std::vector<Cell> out;
    for (int y = r.y; y < r.y + r.h; ++y)
      for (int x = r.x; x < r.x + r.w; ++x)
        if (env.is_free({x, y}) && env.object_id({x, y}) < 0)
          out.push_back({x, y});
    return out;
  };

  auto vocab_id = [&](const std::string& label) {
    auto& vocab = env.object_vocab();
    auto it = std::find(vocab.begin(), vocab.end(), label);
    if (it != vocab.end()) return static_cast<int>(it - vocab.begin());
    vocab.push_back(label);
    return static_cast<int>(vocab.size()) - 1;
  };

  // Target object first; its room must allow the category when possible.
  const std::string target =
      kTargetCategories[static_cast<std::size_t>(rand_int(
          rng, 0, static_cast<int>(kTargetCategories.size()) - 1))];
  std::vector<int> target_rooms;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& allowed =
        placement_table().at(kRoomVocab[static_cast<std::size_t>(region_label[i])]);
    if (std::find(allowed.begin(), allowed.end(), target) != allowed.end())
      target_rooms.push_back(static_cast<int>(i));
  }
  if (target_rooms.empty())
    for (std::size_t i = 0; i < regions.size(); ++i)
      target_rooms.push_back(static_cast<int>(i));

  // Context clutter per the room-conditioned table.
  const int n_objects = std::max(
      1, static_cast<int>(std::lround(params.object_density *
                                      static_cast<double>(regions.size()))));
  for (int i = 0; i < n_objects - 1; ++i) {
    const int ri = rand_int(rng, 0, static_cast<int>(regions.size()) - 1);
    const auto& allowed =
        placement_table().at(kRoomVocab[static_cast<std::size_t>(region_label[ri])]);
    const std::string label =
        allowed[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(allowed.size()) - 1))];
    const auto cells = free_cells_in(regions[static_cast<std::size_t>(ri)]);
    if (cells.empty()) continue;
    const Cell c = cells[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(cells.size()) - 1))];
    env.set_object(c, vocab_id(label));
  }

  // Start pose: a free cell with full clearance, no object underfoot.
  std::vector<Cell> start_candidates;
  for (int y = 1; y < params.height - 1; ++y)
    for (int x = 1; x < params.width - 1; ++x) {
      const Cell c{x, y};
      if (!env.is_free(c) || env.object_id(c) >= 0) continue;
      bool clear = true;
      for (int dy = -1; dy <= 1 && clear; ++dy)
        for (int dx = -1; dx <= 1 && clear; ++dx)
          if (!env.is_free({x + dx, y + dy})) clear = false;
      if (clear) start_candidates.push_back(c);
    }
  if (start_candidates.empty()) throw ScenarioError("generator: no clear start cell");
  const Cell start_cell = start_candidates[static_cast<std::size_t>(
      rand_int(rng, 0, static_cast<int>(start_candidates.size()) - 1))];
  const Vec2 start_pos = cell_center(start_cell, params.cell_size);
  const double theta = rand_int(rng, 0, 11) * M_PI / 6.0;

  // Place the target with both plain-geodesic and planning reachability
  // from the start; re-draw the cell on failure.
  const int target_id = vocab_id(target);
  bool placed = false;
  for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
    const int ri = target_rooms[static_cast<std::size_t>(
        rand_int(rng, 0, static_cast<int>(target_rooms.size()) - 1))];
    auto cells = free_cells_in(regions[static_cast<std::size_t>(ri)]);
    std::erase(cells, start_cell);
    if (cells.empty()) continue;
    const Cell c = cells[static_cast<std::size_t>(
        rand_int(rng, 0, static_cast<int>(cells.size()) - 1))];
    env.set_object(c, target_id);

    const BeliefMap truth = BeliefMap::from_environment(env);
    const auto plain = geodesic_distance(truth, start_cell, {c});
    bool plannable = false;
    if (plain) {
      FmmOptions opts;
      opts.unknown_traversable = false;
      opts.inflate_obstacles = true;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          opts.force_traversable.push_back({start_cell.x + dx, start_cell.y + dy});
      const DistanceField f = fmm_field(truth, {c}, opts);
      plannable = f.reachable(start_cell);
    }
    if (plain && plannable) {
      placed = true;
    } else {
      env.set_object(c, -1);
    }
  }
  if (!placed)
    throw ScenarioError("generator: target unreachable after 100 placement retries");

  env.index_objects();
  env.validate();

  Scenario scenario{std::move(env),
                    Pose{start_pos.x(), start_pos.y(), theta},
                    target,
                    "generated"};
  return scenario;
}

std::string generate_scenario_json(const GenParams& params) {
  return scenario_to_json(generate_scenario(params));
}

std::vector<std::string> generate_scenarios(const GenParams& params, int n,
                                            const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> paths;
  for (int i = 0; i < n; ++i) {
    GenParams p = params;
    p.seed = params.seed + static_cast<std::uint64_t>(i);
    char name[32];
    std::snprintf(name, sizeof(name), "scenario_%03d.json", i);
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ScenarioError(path + ": cannot write scenario");
    out << generate_scenario_json(p);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace ognav
