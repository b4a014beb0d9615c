#pragma once
// Test-side reference implementations and generators. Nothing here calls
// into the library's search or planning code paths: BFS with an explicit
// frontier is the shortest-path oracle that A* has to match, and the map
// generator only uses the shared RNG so fixtures stay reproducible.

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "gridnav/gridnav.hpp"

namespace oracle {

// Unweighted shortest path length over the 4-connected free cells, or
// nullopt when no path exists. Endpoints must be free and in bounds.
inline std::optional<int> bfs_distance(const gridnav::GridMap& map,
                                       gridnav::Cell start, gridnav::Cell goal) {
  if (!map.is_free(start) || !map.is_free(goal)) return std::nullopt;
  if (start == goal) return 0;
  const int cols = map.cols;
  std::vector<int> dist(static_cast<size_t>(map.cell_count()), -1);
  std::queue<gridnav::Cell> frontier;
  dist[static_cast<size_t>(start.row) * cols + start.col] = 0;
  frontier.push(start);
  while (!frontier.empty()) {
    const gridnav::Cell here = frontier.front();
    frontier.pop();
    const int d = dist[static_cast<size_t>(here.row) * cols + here.col];
    for (int mv = 0; mv < 4; ++mv) {
      const gridnav::Cell next = gridnav::apply_move(here, mv);
      if (!map.is_free(next)) continue;
      int& slot = dist[static_cast<size_t>(next.row) * cols + next.col];
      if (slot >= 0) continue;
      slot = d + 1;
      if (next == goal) return slot;
      frontier.push(next);
    }
  }
  return std::nullopt;
}

// Random occupancy grid. Each cell is blocked independently with the
// given probability; callers pick endpoints from the free cells after.
inline gridnav::GridMap random_map(gridnav::SplitMix64& rng, int rows, int cols,
                                   double block_probability) {
  gridnav::GridMap m;
  m.rows = rows;
  m.cols = cols;
  m.occupancy.resize(static_cast<size_t>(rows) * cols);
  for (auto& cell : m.occupancy)
    cell = rng.next_double() < block_probability ? 1 : 0;
  return m;
}

inline std::vector<gridnav::Cell> free_cells(const gridnav::GridMap& map) {
  std::vector<gridnav::Cell> out;
  for (int r = 0; r < map.rows; ++r)
    for (int c = 0; c < map.cols; ++c)
      if (map.is_free({r, c})) out.push_back({r, c});
  return out;
}

// Distinct free cells chosen uniformly; the map must have enough of them.
inline std::vector<gridnav::Cell> pick_distinct_free(const gridnav::GridMap& map,
                                                     gridnav::SplitMix64& rng,
                                                     int count) {
  std::vector<gridnav::Cell> pool = free_cells(map);
  std::vector<gridnav::Cell> out;
  out.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count && !pool.empty(); ++k) {
    const size_t i = static_cast<size_t>(rng.next_below(pool.size()));
    out.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<ptrdiff_t>(i));
  }
  return out;
}

// Scenario with the given map text and key points, all noise sources at
// their defaults. Mission-affecting knobs can be tweaked by the caller.
inline gridnav::Scenario make_scenario(const std::string& map_text,
                                       gridnav::Cell origin,
                                       std::vector<gridnav::Cell> others) {
  gridnav::Scenario sc;
  sc.map = gridnav::parse_map(map_text);
  sc.keypoints.origin = origin;
  sc.keypoints.others = std::move(others);
  return sc;
}

}  // namespace oracle
