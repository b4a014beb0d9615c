#pragma once
// Dynamic obstacle schedules. These never touch the static map; the
// simulator overlays them per tick and the robot learns about them only
// through ultrasonic readings.

#include <optional>
#include <string>
#include <vector>

#include "gridnav/errors.hpp"
#include "gridnav/map.hpp"

namespace gridnav {

// Present on [appear_tick, disappear_tick); no disappear means forever.
struct TimedObstacle {
  Cell cell{0, 0};
  long appear_tick = 0;
  std::optional<long> disappear_tick;
};

// Steps through waypoints: occupies the cell of the latest waypoint whose
// tick has been reached, absent before the first and from vanish_tick on.
struct MovingObstacle {
  std::vector<std::pair<Cell, long>> waypoints;
  std::optional<long> vanish_tick;
};

struct ObstacleSchedule {
  std::vector<TimedObstacle> timed;
  std::vector<MovingObstacle> moving;

  bool empty() const { return timed.empty() && moving.empty(); }
};

inline void validate_schedule(const ObstacleSchedule& sched, const GridMap& map) {
  for (const auto& t : sched.timed) {
    if (!map.in_bounds(t.cell))
      throw ValidationError("obstacle cell " + to_string(t.cell) + " out of bounds");
    if (t.appear_tick < 0)
      throw ValidationError("obstacle at " + to_string(t.cell) +
                            " has negative appear tick");
    if (t.disappear_tick && *t.disappear_tick <= t.appear_tick)
      throw ValidationError("obstacle at " + to_string(t.cell) +
                            " must disappear after it appears");
  }
  for (const auto& m : sched.moving) {
    if (m.waypoints.empty())
      throw ValidationError("moving obstacle has no waypoints");
    long prev = -1;
    for (const auto& [cell, tick] : m.waypoints) {
      if (!map.in_bounds(cell))
        throw ValidationError("moving obstacle waypoint " + to_string(cell) +
                              " out of bounds");
      if (tick < 0 || tick <= prev)
        throw ValidationError("moving obstacle waypoint ticks must increase");
      prev = tick;
    }
    if (m.vanish_tick && *m.vanish_tick <= m.waypoints.front().second)
      throw ValidationError("moving obstacle vanishes before it appears");
  }
}

// Cells occupied by dynamic obstacles at a tick. An obstacle scheduled
// onto the robot's own cell is suppressed for that tick: obstacles never
// materialize on top of the robot.
inline std::vector<Cell> obstacles_at(const ObstacleSchedule& sched, long tick,
                                      Cell robot) {
  std::vector<Cell> out;
  for (const auto& t : sched.timed) {
    if (tick < t.appear_tick) continue;
    if (t.disappear_tick && tick >= *t.disappear_tick) continue;
    if (t.cell == robot) continue;
    out.push_back(t.cell);
  }
  for (const auto& m : sched.moving) {
    if (m.waypoints.empty() || tick < m.waypoints.front().second) continue;
    if (m.vanish_tick && tick >= *m.vanish_tick) continue;
    Cell at = m.waypoints.front().first;
    for (const auto& [cell, wtick] : m.waypoints) {
      if (wtick <= tick) at = cell;
    }
    if (at == robot) continue;
    out.push_back(at);
  }
  return out;
}

}  // namespace gridnav
