#pragma once
// Compass-guided motion control. A planned grid move becomes a target
// bearing; the robot polls the compass and turns in discrete steps until
// the reading falls inside the tolerance window, then drives forward one
// cell. Decisions are pure; execute_move runs the full loop for one move.

#include <cmath>
#include <string>
#include <vector>

#include "gridnav/angles.hpp"
#include "gridnav/errors.hpp"
#include "gridnav/map.hpp"
#include "gridnav/robot_model.hpp"

namespace gridnav {

enum class HeadingCommand { TurnLeft, TurnRight, Forward };

inline const char* to_string(HeadingCommand c) {
  switch (c) {
    case HeadingCommand::TurnLeft: return "turn_left";
    case HeadingCommand::TurnRight: return "turn_right";
    default: return "forward";
  }
}

struct ControlConfig {
  double bearing_tolerance_deg = 2;
  double turn_step_deg = 4;
  int max_turn_ticks = 1000;  // safety bound before TurnTimeout
};

// A turn step wider than the full tolerance window can hop over it and
// oscillate forever, so that combination is rejected up front.
inline void validate_control(const ControlConfig& cfg) {
  if (!(cfg.bearing_tolerance_deg > 0))
    throw ValidationError("control.bearing_tolerance_deg must be > 0");
  if (!(cfg.turn_step_deg > 0))
    throw ValidationError("control.turn_step_deg must be > 0");
  if (cfg.turn_step_deg > 2 * cfg.bearing_tolerance_deg)
    throw ValidationError(
        "control.turn_step_deg " + std::to_string(cfg.turn_step_deg) +
        " exceeds 2 * bearing_tolerance_deg " +
        std::to_string(2 * cfg.bearing_tolerance_deg) +
        "; the heading could overshoot the window forever");
  if (cfg.max_turn_ticks <= 0)
    throw ValidationError("control.max_turn_ticks must be > 0");
}

// Target bearings for a move sequence, element-wise lookup.
inline std::vector<double> moves_to_bearings(const std::vector<int>& moves,
                                             const BearingConfig& cfg) {
  std::vector<double> out;
  out.reserve(moves.size());
  for (int m : moves) {
    if (m < 0 || m > 3)
      throw Error("MissingBearing: no bearing for move id " + std::to_string(m));
    out.push_back(cfg.for_move(m));
  }
  return out;
}

// Within tolerance: go. Otherwise turn toward the smaller angular error;
// the exact 180 degree tie turns right (wrap_signed maps it to +180).
inline HeadingCommand heading_decision(double measured_deg, double target_deg,
                                       const ControlConfig& cfg) {
  const double e = bearing_error(measured_deg, target_deg);
  if (std::abs(e) <= cfg.bearing_tolerance_deg) return HeadingCommand::Forward;
  return e > 0 ? HeadingCommand::TurnRight : HeadingCommand::TurnLeft;
}

struct MoveLog {
  int turn_ticks = 0;             // rotations issued before Forward fired
  double heading_at_forward = 0;  // compass reading that triggered Forward
  double drift_cm = 0;            // signed lateral drift of the forward step
};

// Full guidance loop for one planned move: poll, turn, repeat until the
// window is hit, then advance one cell. The compass is re-read every tick
// so noise is resampled per decision.
inline MoveLog execute_move(RobotState& state, int move, const GridMap& map,
                            const BearingConfig& bearings, const ControlConfig& cfg,
                            const EncoderSpec& enc, const DriftModel& drift,
                            double compass_noise_sd_deg, SplitMix64& rng) {
  const Cell next = apply_move(state.cell, move);
  if (!map.is_free(next))
    throw Error("BlockedAhead: cell " + to_string(next) + " is not free");
  const double target = bearings.for_move(move);

  MoveLog log;
  for (;;) {
    const double measured = compass_read(state.heading_deg, compass_noise_sd_deg, rng);
    const HeadingCommand cmd = heading_decision(measured, target, cfg);
    if (cmd == HeadingCommand::Forward) {
      log.heading_at_forward = measured;
      break;
    }
    if (++log.turn_ticks > cfg.max_turn_ticks)
      throw Error("TurnTimeout: heading never entered the tolerance window after " +
                  std::to_string(cfg.max_turn_ticks) + " turn ticks");
    const double step =
        cmd == HeadingCommand::TurnRight ? cfg.turn_step_deg : -cfg.turn_step_deg;
    state.heading_deg = wrap360(state.heading_deg + step);
  }
  log.drift_cm = forward_step(state, move, map, enc, drift, rng);
  return log;
}

}  // namespace gridnav
