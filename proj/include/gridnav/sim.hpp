#pragma once
// Discrete-time mission engine. Each tick runs a fixed phase order:
// obstacle schedule update, sensor read, avoidance transition, control
// command, kinematics, trace append. Exactly one robot command per tick,
// so identical (scenario, seed) pairs replay byte-identically.

#include <string>
#include <utility>
#include <vector>

#include "gridnav/avoidance.hpp"
#include "gridnav/control.hpp"
#include "gridnav/map.hpp"
#include "gridnav/obstacles.hpp"
#include "gridnav/pathfind.hpp"
#include "gridnav/robot_model.hpp"
#include "gridnav/rng.hpp"
#include "gridnav/scenario.hpp"
#include "gridnav/tour.hpp"
#include "gridnav/trace.hpp"

namespace gridnav {

struct World {
  Scenario sc;
  SplitMix64 rng{1};  // mission noise stream (sensors, drift)
  uint64_t mission_seed = 1;

  RobotState robot;
  AvoidanceState avoid;

  DistanceMatrix matrix;     // pairwise legs for the current plan
  std::vector<int> moves;    // flattened move list of the current plan
  size_t next_move = 0;

  long tick = 0;
  int planned_cost = 0;
  int executed_cost = 0;
  int replans = 0;
  std::vector<char> covered;       // per key point index
  std::vector<int> covered_order;  // indices in first-visit order
  std::vector<TickRecord> records;
  FailureReason failure = FailureReason::None;

  int pending_move() const { return moves[next_move]; }
  bool plan_finished() const { return next_move >= moves.size(); }
  bool succeeded() const {
    return plan_finished() && failure == FailureReason::None &&
           robot.cell == sc.keypoints.origin;
  }
};

namespace detail {

// Flatten a tour over the matrix into one move list. Closed tours get
// the return leg to the start appended; open tours already end where
// they should.
inline std::vector<int> tour_to_moves(const DistanceMatrix& m, const Tour& tour,
                                      bool closed) {
  std::vector<int> moves;
  auto append_leg = [&](int from, int to) {
    const auto leg = path_to_moves(m.path(from, to));
    moves.insert(moves.end(), leg.begin(), leg.end());
  };
  for (size_t k = 1; k < tour.order.size(); ++k)
    append_leg(tour.order[k - 1], tour.order[k]);
  if (closed && tour.order.size() > 1) append_leg(tour.order.back(), tour.order.front());
  return moves;
}

inline void mark_coverage(World& w) {
  for (int i = 0; i < w.sc.keypoints.size(); ++i) {
    if (w.covered[static_cast<size_t>(i)]) continue;
    if (w.sc.keypoints.at(i) == w.robot.cell) {
      w.covered[static_cast<size_t>(i)] = 1;
      w.covered_order.push_back(i);
    }
  }
}

// Static map with this tick's dynamic obstacles stamped in, for sensing.
inline GridMap overlay_map(const World& w, const std::vector<Cell>& active) {
  GridMap m = w.sc.map;
  for (const Cell& c : active) m.set_blocked(c, true);
  return m;
}

inline int sensing_direction(const World& w) {
  switch (w.avoid.phase) {
    case AvoidPhase::ProbingRight: return right_of(w.avoid.blocked_facing);
    case AvoidPhase::ProbingLeft: return left_of(w.avoid.blocked_facing);
    case AvoidPhase::ProbingBack: return opposite_move(w.avoid.blocked_facing);
    default:
      return w.plan_finished() ? kForward : w.pending_move();
  }
}

}  // namespace detail

// Plan the initial tour and place the robot. Throws
// DisconnectedKeyPointError if the static map cannot connect the key
// points; run_mission turns that into a failed result.
inline World make_world(const Scenario& sc, uint64_t mission_seed) {
  World w;
  w.sc = sc;
  w.mission_seed = mission_seed;
  w.rng = SplitMix64(mission_seed);

  w.robot.cell = sc.keypoints.origin;
  w.robot.heading_deg = sc.bearings.for_move(kForward);

  w.avoid.wait_timeout_ticks = sc.wait_timeout_ticks;
  w.avoid.detection_threshold_cm = sc.detection_threshold_cm;
  w.avoid.cell_size_cm = sc.map.cell_size_cm;

  w.matrix = pairwise_distances(sc.map, sc.keypoints);
  const Tour tour = sa_optimize(w.matrix, sc.sa);
  w.planned_cost = tour.total_cost;
  w.moves = detail::tour_to_moves(w.matrix, tour, true);

  w.covered.assign(static_cast<size_t>(sc.keypoints.size()), 0);
  w.covered[0] = 1;  // the origin is covered at spawn
  w.covered_order.push_back(0);
  return w;
}

// Advance one tick. Precondition: the mission is still in progress.
inline void sim_step(World& w) {
  // (1) dynamic obstacles for this tick
  const auto active = obstacles_at(w.sc.schedule, w.tick, w.robot.cell);
  const GridMap sensed = detail::overlay_map(w, active);

  // (2) one ultrasonic reading along the phase's sensing direction
  const int sense_dir = detail::sensing_direction(w);
  const UltrasonicReading reading =
      ultrasonic_read(sensed, w.robot.cell, sense_dir, w.sc.ultrasonic, w.rng);

  // (3) avoidance transition
  auto [next_avoid, decision] = avoidance_step(w.avoid, reading, w.tick);
  w.avoid = next_avoid;

  // (4) + (5) one command and its kinematics
  std::string command = "halt";
  double tick_drift = 0;
  switch (decision.kind) {
    case DecisionKind::Proceed:
    case DecisionKind::Resume: {
      if (w.plan_finished()) break;  // nothing left to execute
      const int move = w.pending_move();
      const double target = w.sc.bearings.for_move(move);
      const double measured =
          compass_read(w.robot.heading_deg, w.sc.compass_noise_sd_deg, w.rng);
      const HeadingCommand cmd = heading_decision(measured, target, w.sc.control);
      if (cmd == HeadingCommand::Forward) {
        tick_drift = forward_step(w.robot, move, w.sc.map, w.sc.encoder, w.sc.drift, w.rng);
        ++w.next_move;
        ++w.executed_cost;
        detail::mark_coverage(w);
        command = "forward";
      } else {
        const double step = cmd == HeadingCommand::TurnRight ? w.sc.control.turn_step_deg
                                                             : -w.sc.control.turn_step_deg;
        w.robot.heading_deg = wrap360(w.robot.heading_deg + step);
        command = to_string(cmd);
      }
      break;
    }
    case DecisionKind::Halt:
      command = "halt";
      break;
    case DecisionKind::TurnTo:
      // Probe swivels are single-tick: snap to the probe bearing and
      // sense along it next tick.
      w.robot.heading_deg = w.sc.bearings.for_move(decision.probe_move);
      command = w.avoid.phase == AvoidPhase::ProbingRight ? "probe_right"
                : w.avoid.phase == AvoidPhase::ProbingLeft ? "probe_left"
                                                           : "probe_back";
      break;
    case DecisionKind::Replan: {
      command = "replan";
      ReplanRequest req;
      req.from_cell = w.robot.cell;
      req.facing_move = decision.free_move;
      req.origin = w.sc.keypoints.origin;
      req.blocked_cell = w.avoid.blocked_cell;
      for (int i = 1; i < w.sc.keypoints.size(); ++i)
        if (!w.covered[static_cast<size_t>(i)])
          req.remaining_keypoints.push_back(w.sc.keypoints.at(i));
      SaConfig sa = w.sc.sa;
      sa.rng_seed = mix_seed(w.sc.sa.rng_seed, static_cast<uint64_t>(w.replans + 1));
      try {
        auto [tour, matrix] = build_replan(req, w.sc.map, sa, &w.matrix);
        w.matrix = std::move(matrix);
        w.moves = detail::tour_to_moves(w.matrix, tour, false);
        w.next_move = 0;
        ++w.replans;
      } catch (const DisconnectedKeyPointError&) {
        w.failure = FailureReason::Disconnected;
      }
      break;
    }
  }

  // (6) trace record, then close out the transient replanning phase
  TickRecord r;
  r.tick = w.tick;
  r.cell = w.robot.cell;
  r.heading_deg = w.robot.heading_deg;
  r.offset_cm = tick_drift;
  r.sensor_cm = reading.distance_cm;
  r.sensor_hit = reading.hit;
  r.sensor_reliable = reading.reliable;
  r.phase = w.avoid.phase;
  r.command = command;
  r.covered = static_cast<int>(w.covered_order.size());
  r.replans = w.replans;
  w.records.push_back(std::move(r));

  if (w.avoid.phase == AvoidPhase::Replanning) w.avoid.phase = AvoidPhase::Cruising;
  ++w.tick;
}

// Run a validated scenario to completion: success, disconnection, or
// tick budget exhaustion. Never throws for those outcomes; the trace is
// always produced.
inline std::pair<MissionResult, MissionTrace> run_mission(const Scenario& sc,
                                                          uint64_t seed) {
  MissionResult res;
  MissionTrace trace;
  res.ended_at = sc.keypoints.origin;

  World w;
  try {
    w = make_world(sc, seed);
  } catch (const DisconnectedKeyPointError&) {
    res.failure = FailureReason::Disconnected;
    res.covered_order = {0};
    trace.result = res;
    return {res, trace};
  }

  const long budget = effective_tick_budget(sc);
  while (!w.succeeded() && w.failure == FailureReason::None) {
    if (w.tick >= budget) {
      w.failure = FailureReason::TickBudget;
      break;
    }
    sim_step(w);
  }

  res.success = w.succeeded();
  res.covered_order = w.covered_order;
  res.ended_at = w.robot.cell;
  res.planned_cost = w.planned_cost;
  res.executed_cost = w.executed_cost;
  res.ticks = w.tick;
  res.replans = w.replans;
  res.failure = w.failure;
  trace.records = std::move(w.records);
  trace.result = res;
  return {res, trace};
}

}  // namespace gridnav
