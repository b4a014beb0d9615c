#pragma once
// Key point tours. Pairwise leg costs come from A* over the static map;
// the visiting order is optimized with simulated annealing (2-opt moves,
// geometric cooling, exp(-delta/T) acceptance). Brute-force and
// nearest-neighbor solvers serve as oracle and baseline.
//
// Two problem shapes share the machinery:
//   - closed cycle: order[0] = 0 fixed, cost includes the return leg;
//   - open path:    order[0] = 0 and order[n-1] = end fixed, no return leg
//     (used by replanning: current cell -> remaining key points -> origin).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gridnav/errors.hpp"
#include "gridnav/map.hpp"
#include "gridnav/pathfind.hpp"
#include "gridnav/rng.hpp"

namespace gridnav {

inline constexpr int kInfeasible = -1;

struct DistanceMatrix {
  int n = 0;
  std::vector<int> d;        // n*n step counts, kInfeasible when no path
  std::vector<Path> paths;   // n*n stored paths for execution
  std::vector<Cell> cells;   // the key point cells, index-aligned

  int dist(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
  const Path& path(int i, int j) const {
    return paths[static_cast<size_t>(i) * n + j];
  }
  bool feasible(int i, int j) const { return dist(i, j) != kInfeasible; }
};

// All-pairs A* over an explicit cell list. Entry 0 is the tour start;
// throws DisconnectedKeyPointError if anything is unreachable from it.
inline DistanceMatrix pairwise_cells(const GridMap& map,
                                     const std::vector<Cell>& cells) {
  DistanceMatrix m;
  m.n = static_cast<int>(cells.size());
  m.cells = cells;
  m.d.assign(static_cast<size_t>(m.n) * m.n, 0);
  m.paths.assign(static_cast<size_t>(m.n) * m.n, Path{});
  for (int i = 0; i < m.n; ++i) {
    m.paths[static_cast<size_t>(i) * m.n + i] = Path{{cells[static_cast<size_t>(i)]}};
    for (int j = i + 1; j < m.n; ++j) {
      auto p = astar(map, cells[static_cast<size_t>(i)], cells[static_cast<size_t>(j)]);
      const int cost = p ? p->cost() : kInfeasible;
      m.d[static_cast<size_t>(i) * m.n + j] = cost;
      m.d[static_cast<size_t>(j) * m.n + i] = cost;
      if (p) {
        m.paths[static_cast<size_t>(j) * m.n + i] = p->reversed();
        m.paths[static_cast<size_t>(i) * m.n + j] = std::move(*p);
      }
    }
  }
  for (int j = 1; j < m.n; ++j)
    if (!m.feasible(0, j))
      throw DisconnectedKeyPointError(
          "key point " + to_string(cells[static_cast<size_t>(j)]) +
          " unreachable from " + to_string(cells[0]));
  return m;
}

inline DistanceMatrix pairwise_distances(const GridMap& map, const KeyPointSet& kps) {
  validate_keypoints(map, kps);
  return pairwise_cells(map, kps.cells());
}

struct Tour {
  std::vector<int> order;  // permutation of 0..n-1, order[0] = 0
  int total_cost = 0;
};

namespace detail {

inline int leg_cost(const DistanceMatrix& m, int i, int j) {
  const int c = m.dist(i, j);
  if (c == kInfeasible)
    throw Error("InfeasibleLeg: no path between key points " + std::to_string(i) +
                " and " + std::to_string(j));
  return c;
}

// Sum of consecutive legs; closed adds the return leg to order[0].
inline int order_cost(const DistanceMatrix& m, const std::vector<int>& order,
                      bool closed) {
  int total = 0;
  for (size_t k = 1; k < order.size(); ++k)
    total += leg_cost(m, order[k - 1], order[k]);
  if (closed && order.size() > 1) total += leg_cost(m, order.back(), order.front());
  return total;
}

}  // namespace detail

// Closed-cycle length including the return to order[0].
inline int tour_length(const DistanceMatrix& m, const std::vector<int>& order) {
  return detail::order_cost(m, order, true);
}

// Open-path length (no return leg).
inline int path_tour_length(const DistanceMatrix& m, const std::vector<int>& order) {
  return detail::order_cost(m, order, false);
}

struct SaConfig {
  double initial_temperature = 0;       // 0 = auto: max matrix entry
  double cooling_rate = 0.995;          // geometric schedule, in (0,1)
  int iterations_per_temperature = 0;   // 0 = auto: 100 * n
  double minimum_temperature = 1e-3;
  uint64_t rng_seed = 1;
};

inline void validate_sa(const SaConfig& cfg) {
  if (cfg.initial_temperature < 0)
    throw ValidationError("sa.initial_temperature must be >= 0 (0 = auto)");
  if (!(cfg.cooling_rate > 0 && cfg.cooling_rate < 1))
    throw ValidationError("sa.cooling_rate must lie in (0,1)");
  if (cfg.iterations_per_temperature < 0)
    throw ValidationError("sa.iterations_per_temperature must be >= 0 (0 = auto)");
  if (!(cfg.minimum_temperature > 0))
    throw ValidationError("sa.minimum_temperature must be > 0");
}

// One record per temperature level, serialized by the CLI.
struct SaSample {
  long iteration = 0;  // cumulative proposals
  double temperature = 0;
  int current_cost = 0;
  int best_cost = 0;
};

namespace detail {

// end < 0: closed cycle, order[0] pinned. end >= 0: open path, order[0]
// and order[n-1] = end pinned.
inline Tour greedy_tour(const DistanceMatrix& m, int end) {
  const int n = m.n;
  Tour t;
  t.order.reserve(static_cast<size_t>(n));
  std::vector<char> used(static_cast<size_t>(n), 0);
  t.order.push_back(0);
  used[0] = 1;
  if (end >= 0) used[static_cast<size_t>(end)] = 1;
  int at = 0;
  const int middles = end >= 0 ? n - 2 : n - 1;
  for (int picked = 0; picked < middles; ++picked) {
    int best = -1;
    int best_d = 0;
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<size_t>(j)]) continue;
      const int dj = leg_cost(m, at, j);
      if (best < 0 || dj < best_d) {  // ties -> smallest index
        best = j;
        best_d = dj;
      }
    }
    t.order.push_back(best);
    used[static_cast<size_t>(best)] = 1;
    at = best;
  }
  if (end >= 0 && n > 1) t.order.push_back(end);
  t.total_cost = order_cost(m, t.order, end < 0);
  return t;
}

inline Tour brute_tour(const DistanceMatrix& m, int end) {
  const int n = m.n;
  if (n > 10) throw Error("TooManyKeyPoints: brute force capped at 10, got " +
                          std::to_string(n));
  std::vector<int> middle;
  for (int i = 1; i < n; ++i)
    if (i != end) middle.push_back(i);
  std::sort(middle.begin(), middle.end());

  Tour best;
  auto consider = [&](const std::vector<int>& mid) {
    std::vector<int> order{0};
    order.insert(order.end(), mid.begin(), mid.end());
    if (end >= 0 && n > 1) order.push_back(end);
    const int cost = order_cost(m, order, end < 0);
    if (best.order.empty() || cost < best.total_cost) {  // first = lexicographic
      best.order = order;
      best.total_cost = cost;
    }
  };
  if (middle.empty()) {
    consider(middle);
    return best;
  }
  do {
    consider(middle);
  } while (std::next_permutation(middle.begin(), middle.end()));
  return best;
}

inline Tour anneal(const DistanceMatrix& m, int end, const SaConfig& cfg,
                   std::vector<SaSample>* history) {
  validate_sa(cfg);
  const int n = m.n;
  const bool closed = end < 0;

  Tour current = greedy_tour(m, end);
  Tour best = current;
  {
    // The identity order is always a considered candidate, so the result
    // can never exceed the identity-order baseline.
    std::vector<int> identity(static_cast<size_t>(n));
    std::iota(identity.begin(), identity.end(), 0);
    if (closed || n <= 1 || identity.back() == end) {
      const int id_cost = order_cost(m, identity, closed);
      if (id_cost < best.total_cost) best = Tour{identity, id_cost};
    }
  }

  // Movable positions: [1, n-1] for cycles, [1, n-2] for pinned-end paths.
  const int lo = 1;
  const int hi = closed ? n - 1 : n - 2;
  if (hi - lo + 1 < 2) return best;

  double t0 = cfg.initial_temperature;
  if (t0 <= 0) {
    int maxd = 0;
    for (int v : m.d) maxd = std::max(maxd, v);
    t0 = static_cast<double>(maxd);
    if (t0 <= 0) return best;
  }
  const int iters = cfg.iterations_per_temperature > 0
                        ? cfg.iterations_per_temperature
                        : 100 * n;

  SplitMix64 rng(cfg.rng_seed);
  auto& ord = current.order;
  long total_iter = 0;
  const int span = hi - lo + 1;

  for (double temp = t0; temp > cfg.minimum_temperature; temp *= cfg.cooling_rate) {
    for (int k = 0; k < iters; ++k) {
      ++total_iter;
      int i = lo + static_cast<int>(rng.next_below(static_cast<uint64_t>(span)));
      int j = lo + static_cast<int>(rng.next_below(static_cast<uint64_t>(span)));
      if (i == j) continue;
      if (i > j) std::swap(i, j);

      // 2-opt: reverse ord[i..j]. Only the two boundary edges change.
      const int a = ord[static_cast<size_t>(i - 1)];
      const int b = ord[static_cast<size_t>(i)];
      const int c = ord[static_cast<size_t>(j)];
      const int succ_idx = (j + 1 <= n - 1) ? j + 1 : 0;
      const int e = ord[static_cast<size_t>(succ_idx)];
      const int delta = m.dist(a, c) + m.dist(b, e) - m.dist(a, b) - m.dist(c, e);

      if (delta <= 0 || rng.next_double() < std::exp(-delta / temp)) {
        std::reverse(ord.begin() + i, ord.begin() + j + 1);
        current.total_cost += delta;
        if (current.total_cost < best.total_cost) best = current;
      }
    }
    if (history)
      history->push_back({total_iter, temp, current.total_cost, best.total_cost});
  }
  return best;
}

}  // namespace detail

// Closed tours over a distance matrix, origin pinned at position 0.
inline Tour sa_optimize(const DistanceMatrix& m, const SaConfig& cfg,
                        std::vector<SaSample>* history = nullptr) {
  return detail::anneal(m, -1, cfg, history);
}

inline Tour brute_force_tour(const DistanceMatrix& m) {
  return detail::brute_tour(m, -1);
}

inline Tour nearest_neighbor_tour(const DistanceMatrix& m) {
  return detail::greedy_tour(m, -1);
}

// Open-path variants with the final position pinned to `end` (replanning:
// start at the current cell, finish at the origin).
inline Tour sa_optimize_path(const DistanceMatrix& m, int end, const SaConfig& cfg,
                             std::vector<SaSample>* history = nullptr) {
  return detail::anneal(m, end, cfg, history);
}

inline Tour brute_force_path(const DistanceMatrix& m, int end) {
  return detail::brute_tour(m, end);
}

// Identity-order cost, the "without SA" reporting baseline.
inline int identity_tour_length(const DistanceMatrix& m) {
  std::vector<int> identity(static_cast<size_t>(m.n));
  std::iota(identity.begin(), identity.end(), 0);
  return tour_length(m, identity);
}

}  // namespace gridnav
