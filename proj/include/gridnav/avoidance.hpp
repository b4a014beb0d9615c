#pragma once
// Dynamic obstacle handling: a small state machine that halts when a
// blocker appears ahead, waits for it to clear, probes right, left, then
// back for a free direction, and finally asks for a replan over the key
// points not yet covered.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridnav/errors.hpp"
#include "gridnav/map.hpp"
#include "gridnav/robot_model.hpp"
#include "gridnav/tour.hpp"

namespace gridnav {

enum class AvoidPhase { Cruising, Waiting, ProbingRight, ProbingLeft, ProbingBack, Replanning };

inline const char* phase_name(AvoidPhase p) {
  switch (p) {
    case AvoidPhase::Cruising: return "cruising";
    case AvoidPhase::Waiting: return "waiting";
    case AvoidPhase::ProbingRight: return "probing_right";
    case AvoidPhase::ProbingLeft: return "probing_left";
    case AvoidPhase::ProbingBack: return "probing_back";
    default: return "replanning";
  }
}

struct AvoidanceState {
  AvoidPhase phase = AvoidPhase::Cruising;
  long since_tick = 0;                  // when the current wait began
  long wait_timeout_ticks = 10;         // patience before probing starts
  double detection_threshold_cm = 100;  // ignore echoes farther than this
  double cell_size_cm = kDefaultCellSizeCm;
  Cell blocked_cell{0, 0};              // cell ahead at detection time
  int blocked_facing = kForward;        // move the robot was attempting
};

enum class DecisionKind {
  Proceed,  // path clear, let the controller act
  Halt,     // hold position this tick
  Resume,   // obstacle cleared, continue the pending plan
  TurnTo,   // swivel to probe_move and sense there next tick
  Replan,   // free_move found, rebuild the tour around blocked_cell
};

struct Decision {
  DecisionKind kind = DecisionKind::Proceed;
  int probe_move = kForward;  // TurnTo: direction to swivel toward
  int free_move = kForward;   // Replan: probe direction that came back free
};

namespace detail {

// Detection rule while cruising or waiting: an echo inside the
// detection threshold and within one cell of travel.
inline bool blocker_ahead(const UltrasonicReading& r, const AvoidanceState& s) {
  return r.hit && r.distance_cm <= s.detection_threshold_cm &&
         r.distance_cm <= s.cell_size_cm;
}

// Probe rule: a direction is free when nothing echoes within one cell.
// Static walls and map edges count as blockers here on purpose.
inline bool probe_free(const UltrasonicReading& r, const AvoidanceState& s) {
  return !(r.hit && r.distance_cm <= s.cell_size_cm);
}

}  // namespace detail

// One transition of the avoidance machine. The reading must have been
// taken along the phase's sensing direction: the pending move while
// cruising or waiting, the probe direction while probing. Total over all
// phases; never throws.
inline std::pair<AvoidanceState, Decision> avoidance_step(AvoidanceState s,
                                                          const UltrasonicReading& reading,
                                                          long now_tick) {
  Decision d;
  switch (s.phase) {
    case AvoidPhase::Cruising:
      if (detail::blocker_ahead(reading, s)) {
        s.phase = AvoidPhase::Waiting;
        s.since_tick = now_tick;
        s.blocked_cell = apply_move(reading.from, reading.direction);
        s.blocked_facing = reading.direction;
        d.kind = DecisionKind::Halt;
      }
      break;

    case AvoidPhase::Waiting:
      if (!detail::blocker_ahead(reading, s)) {
        s.phase = AvoidPhase::Cruising;
        d.kind = DecisionKind::Resume;
      } else if (now_tick - s.since_tick >= s.wait_timeout_ticks) {
        s.phase = AvoidPhase::ProbingRight;
        d.kind = DecisionKind::TurnTo;
        d.probe_move = right_of(s.blocked_facing);
      } else {
        d.kind = DecisionKind::Halt;
      }
      break;

    case AvoidPhase::ProbingRight:
      if (detail::probe_free(reading, s)) {
        s.phase = AvoidPhase::Replanning;
        d.kind = DecisionKind::Replan;
        d.free_move = right_of(s.blocked_facing);
      } else {
        s.phase = AvoidPhase::ProbingLeft;
        d.kind = DecisionKind::TurnTo;
        d.probe_move = left_of(s.blocked_facing);
      }
      break;

    case AvoidPhase::ProbingLeft:
      if (detail::probe_free(reading, s)) {
        s.phase = AvoidPhase::Replanning;
        d.kind = DecisionKind::Replan;
        d.free_move = left_of(s.blocked_facing);
      } else {
        s.phase = AvoidPhase::ProbingBack;
        d.kind = DecisionKind::TurnTo;
        d.probe_move = opposite_move(s.blocked_facing);
      }
      break;

    case AvoidPhase::ProbingBack:
      if (detail::probe_free(reading, s)) {
        s.phase = AvoidPhase::Replanning;
        d.kind = DecisionKind::Replan;
        d.free_move = opposite_move(s.blocked_facing);
      } else {
        // Nowhere to go: start a fresh wait and hope the blockers move.
        s.phase = AvoidPhase::Waiting;
        s.since_tick = now_tick;
        d.kind = DecisionKind::Halt;
      }
      break;

    case AvoidPhase::Replanning:
      // The simulator resolves the replan in the same tick; if stepped
      // here anyway, fall back to cruising.
      s.phase = AvoidPhase::Cruising;
      d.kind = DecisionKind::Resume;
      break;
  }
  return {s, d};
}

struct ReplanRequest {
  Cell from_cell{0, 0};             // robot's current cell, new tour start
  int facing_move = kForward;       // free direction found by probing
  std::vector<Cell> remaining_keypoints;  // uncovered, origin excluded
  Cell origin{0, 0};                // tour must still end here
  std::optional<Cell> blocked_cell; // treated as blocked for this replan only
};

// Rebuild a tour from the current cell over the remaining key points,
// ending at the origin. The blocked cell is masked on a scratch copy of
// the map, never on the static layer. Pairs not involving the new start
// are reused from the prior matrix when available; only start-adjacent
// legs are recomputed.
inline std::pair<Tour, DistanceMatrix> build_replan(const ReplanRequest& req,
                                                    const GridMap& map,
                                                    const SaConfig& sa,
                                                    const DistanceMatrix* prior = nullptr) {
  std::vector<Cell> cells;
  cells.reserve(req.remaining_keypoints.size() + 2);
  cells.push_back(req.from_cell);
  cells.insert(cells.end(), req.remaining_keypoints.begin(), req.remaining_keypoints.end());
  cells.push_back(req.origin);
  const int n = static_cast<int>(cells.size());

  GridMap scratch = map;
  if (req.blocked_cell && scratch.in_bounds(*req.blocked_cell) &&
      *req.blocked_cell != req.from_cell)
    scratch.set_blocked(*req.blocked_cell, true);

  auto prior_index = [&](Cell c) -> int {
    if (!prior) return -1;
    for (int i = 0; i < prior->n; ++i)
      if (prior->cells[static_cast<size_t>(i)] == c) return i;
    return -1;
  };

  DistanceMatrix m;
  m.n = n;
  m.cells = cells;
  m.d.assign(static_cast<size_t>(n) * n, 0);
  m.paths.assign(static_cast<size_t>(n) * n, Path{});
  for (int i = 0; i < n; ++i)
    m.paths[static_cast<size_t>(i) * n + i] = Path{{cells[static_cast<size_t>(i)]}};

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int cost = kInfeasible;
      Path forward;
      bool reused = false;
      if (i != 0) {
        const int pi = prior_index(cells[static_cast<size_t>(i)]);
        const int pj = prior_index(cells[static_cast<size_t>(j)]);
        if (pi >= 0 && pj >= 0 && prior->feasible(pi, pj)) {
          cost = prior->dist(pi, pj);
          forward = prior->path(pi, pj);
          reused = true;
        }
      }
      if (!reused) {
        const Cell a = cells[static_cast<size_t>(i)];
        const Cell b = cells[static_cast<size_t>(j)];
        // A masked cell can sit on a key point; that leg is simply
        // infeasible, reported below as a disconnection.
        if (scratch.is_free(a) && scratch.is_free(b)) {
          auto p = astar(scratch, a, b);
          if (p) {
            cost = p->cost();
            forward = std::move(*p);
          }
        }
      }
      m.d[static_cast<size_t>(i) * n + j] = cost;
      m.d[static_cast<size_t>(j) * n + i] = cost;
      if (cost != kInfeasible) {
        m.paths[static_cast<size_t>(j) * n + i] = forward.reversed();
        m.paths[static_cast<size_t>(i) * n + j] = std::move(forward);
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!m.feasible(i, j))
        throw DisconnectedKeyPointError("replan cannot connect " +
                                        to_string(cells[static_cast<size_t>(i)]) + " and " +
                                        to_string(cells[static_cast<size_t>(j)]));

  Tour tour = sa_optimize_path(m, n - 1, sa);
  return {tour, m};
}

}  // namespace gridnav
