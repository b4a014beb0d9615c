#pragma once
// A* over 4-connected occupancy grids with unit step cost and the
// obstacle-ignoring Manhattan heuristic, f = g + h. Integer arithmetic
// throughout; deterministic tie-breaking (smaller f, then larger g, then
// earlier insertion) so repeated runs expand identically.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "gridnav/errors.hpp"
#include "gridnav/map.hpp"

namespace gridnav {

struct Path {
  std::vector<Cell> cells;  // start..goal inclusive

  int cost() const { return static_cast<int>(cells.size()) - 1; }

  Path reversed() const {
    Path p = *this;
    std::reverse(p.cells.begin(), p.cells.end());
    return p;
  }
};

// 4-directional distance ignoring obstacles, unit cost per step.
inline int heuristic(Cell c, Cell goal) {
  return std::abs(c.row - goal.row) + std::abs(c.col - goal.col);
}

namespace detail {

struct OpenEntry {
  int f;
  int g;
  uint32_t seq;
  int cell;  // row*cols + col

  // Priority: smallest f, then largest g, then earliest insertion.
  bool operator>(const OpenEntry& o) const {
    if (f != o.f) return f > o.f;
    if (g != o.g) return g < o.g;
    return seq > o.seq;
  }
};

}  // namespace detail

// Shortest path between two free cells, or nullopt when the goal is
// unreachable. Throws on blocked or out-of-bounds endpoints.
inline std::optional<Path> astar(const GridMap& map, Cell start, Cell goal) {
  if (!map.is_free(start))
    throw Error("BlockedEndpoint: start " + to_string(start));
  if (!map.is_free(goal))
    throw Error("BlockedEndpoint: goal " + to_string(goal));

  const int n = map.cell_count();
  const int cols = map.cols;
  auto index = [cols](Cell c) { return c.row * cols + c.col; };

  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> best_g(static_cast<size_t>(n), kInf);
  std::vector<int32_t> parent(static_cast<size_t>(n), -1);
  std::vector<uint8_t> closed(static_cast<size_t>(n), 0);

  std::priority_queue<detail::OpenEntry, std::vector<detail::OpenEntry>,
                      std::greater<detail::OpenEntry>>
      open;
  uint32_t seq = 0;
  const int start_idx = index(start);
  const int goal_idx = index(goal);
  best_g[static_cast<size_t>(start_idx)] = 0;
  open.push({heuristic(start, goal), 0, seq++, start_idx});

  while (!open.empty()) {
    detail::OpenEntry top = open.top();
    open.pop();
    if (closed[static_cast<size_t>(top.cell)]) continue;  // stale entry
    closed[static_cast<size_t>(top.cell)] = 1;

    if (top.cell == goal_idx) {
      Path path;
      for (int at = goal_idx; at != -1; at = parent[static_cast<size_t>(at)])
        path.cells.push_back({at / cols, at % cols});
      std::reverse(path.cells.begin(), path.cells.end());
      return path;
    }

    Cell here{top.cell / cols, top.cell % cols};
    for (int mv = 0; mv < 4; ++mv) {
      Cell next = apply_move(here, mv);
      if (!map.is_free(next)) continue;
      const int ni = index(next);
      if (closed[static_cast<size_t>(ni)]) continue;
      const int ng = top.g + 1;
      if (ng < best_g[static_cast<size_t>(ni)]) {
        best_g[static_cast<size_t>(ni)] = ng;
        parent[static_cast<size_t>(ni)] = top.cell;
        open.push({ng + heuristic(next, goal), ng, seq++, ni});
      }
    }
  }
  return std::nullopt;
}

// Move ids that reproduce the path when applied from its first cell.
inline std::vector<int> path_to_moves(const Path& path) {
  std::vector<int> moves;
  if (path.cells.empty()) return moves;
  moves.reserve(path.cells.size() - 1);
  for (size_t i = 1; i < path.cells.size(); ++i) {
    const Cell a = path.cells[i - 1];
    const Cell b = path.cells[i];
    int found = -1;
    for (int mv = 0; mv < 4; ++mv)
      if (apply_move(a, mv) == b) {
        found = mv;
        break;
      }
    if (found < 0)
      throw Error("NonAdjacentStep: " + to_string(a) + " -> " + to_string(b));
    moves.push_back(found);
  }
  return moves;
}

inline std::vector<Cell> apply_moves(Cell start, const std::vector<int>& moves) {
  std::vector<Cell> cells{start};
  for (int mv : moves) cells.push_back(apply_move(cells.back(), mv));
  return cells;
}

}  // namespace gridnav
