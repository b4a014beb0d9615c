#pragma once
// Physical robot model: compass bearings, encoder geometry, ultrasonic
// ranging, and lateral drift. All distances in centimeters, angles in
// degrees, time in seconds.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "gridnav/angles.hpp"
#include "gridnav/errors.hpp"
#include "gridnav/map.hpp"
#include "gridnav/rng.hpp"

namespace gridnav {

// Compass bearing for each move id (forward, left, backward, right).
// Degrees clockwise from north; rows grow southward, columns eastward.
struct BearingConfig {
  std::array<double, 4> bearing_deg{0, 270, 180, 90};

  static BearingConfig standard() { return BearingConfig{}; }
  double for_move(int move) const { return bearing_deg[static_cast<size_t>(move)]; }
};

// The four bearings must form one rigid compass frame: left is forward
// +270, backward +180, right +90 (mod 360), each within the rectification
// tolerance. This rejects sets like {0, 90, 180, 271} where the labels
// point the wrong way even though consecutive gaps look plausible.
inline void validate_bearings(const BearingConfig& cfg, double tolerance_deg = 1.0) {
  const double f = cfg.bearing_deg[kForward];
  const std::array<double, 4> expect{f, f + 270, f + 180, f + 90};
  for (int m = 0; m < 4; ++m) {
    const double err = std::abs(
        wrap_signed(cfg.bearing_deg[static_cast<size_t>(m)] - expect[static_cast<size_t>(m)]));
    if (err > tolerance_deg)
      throw ValidationError("bearing for " + std::string(kMoveNames[static_cast<size_t>(m)]) +
                            " is " + std::to_string(cfg.bearing_deg[static_cast<size_t>(m)]) +
                            " deg, expected " + std::to_string(wrap360(expect[static_cast<size_t>(m)])) +
                            " within " + std::to_string(tolerance_deg) + " deg");
  }
}

struct RobotState {
  Cell cell{0, 0};
  double heading_deg = 0;        // true heading, degrees clockwise from north
  double lateral_offset_cm = 0;  // accumulated drift, signed
  long encoder_left = 0;         // cumulative wheel encoder counts
  long encoder_right = 0;
};

struct UltrasonicModel {
  double speed_of_sound_cm_s = 34300;
  double reliable_range_cm = 100;     // beyond this, readings are unreliable
  double max_range_cm = 400;          // sensor reports this when nothing echoes
  double beyond_range_noise_cm = 10;  // gaussian sd past the reliable range
  double within_range_noise_cm = 0;   // gaussian sd inside the reliable range
};

struct EncoderSpec {
  double wheel_circumference_cm = 20.32;
  int counts_per_revolution = 20;
};

// Forward motion veers a few centimeters sideways per reference stretch;
// the magnitude is drawn uniformly, the sign at random. Arriving at a
// cell re-centers the estimate.
struct DriftModel {
  double min_cm = 3;
  double max_cm = 8;
  bool recenter_on_arrival = true;
};

inline constexpr double kDriftReferenceCm = 50;

inline void validate_ultrasonic(const UltrasonicModel& u) {
  if (!(u.speed_of_sound_cm_s > 0))
    throw ValidationError("ultrasonic.speed_of_sound_cm_s must be > 0");
  if (!(u.reliable_range_cm > 0))
    throw ValidationError("ultrasonic.reliable_range_cm must be > 0");
  if (u.max_range_cm < u.reliable_range_cm)
    throw ValidationError("ultrasonic.max_range_cm must be >= reliable_range_cm");
  if (u.beyond_range_noise_cm < 0)
    throw ValidationError("ultrasonic.beyond_range_noise_cm must be >= 0");
  if (u.within_range_noise_cm < 0)
    throw ValidationError("ultrasonic.within_range_noise_cm must be >= 0");
}

inline void validate_encoder(const EncoderSpec& e) {
  if (!(e.wheel_circumference_cm > 0))
    throw ValidationError("encoder.wheel_circumference_cm must be > 0");
  if (e.counts_per_revolution <= 0)
    throw ValidationError("encoder.counts_per_revolution must be > 0");
}

inline void validate_drift(const DriftModel& d) {
  if (d.min_cm < 0) throw ValidationError("drift.min_cm must be >= 0");
  if (d.max_cm < d.min_cm)
    throw ValidationError("drift.max_cm must be >= drift.min_cm");
}

// Round-trip echo time to one-way distance: the pulse covers the gap twice.
inline double echo_to_distance(double echo_time_s, const UltrasonicModel& u) {
  if (echo_time_s < 0)
    throw Error("NegativeTime: echo time " + std::to_string(echo_time_s) + " s");
  return u.speed_of_sound_cm_s * echo_time_s / 2.0;
}

// Encoder ticks to travel a distance: revolutions = distance / wheel
// circumference, ticks = revolutions * counts, rounded to nearest.
inline long ticks_for_distance(double distance_cm, const EncoderSpec& e) {
  if (distance_cm < 0)
    throw Error("NegativeDistance: " + std::to_string(distance_cm) + " cm");
  return std::llround(distance_cm / e.wheel_circumference_cm * e.counts_per_revolution);
}

// Compass measurement: true heading plus gaussian noise, wrapped to [0,360).
// sd == 0 reads exactly and consumes no randomness.
inline double compass_read(double true_heading_deg, double noise_sd_deg,
                           SplitMix64& rng) {
  if (noise_sd_deg == 0) return wrap360(true_heading_deg);
  return wrap360(true_heading_deg + rng.gaussian(noise_sd_deg));
}

struct UltrasonicReading {
  double distance_cm = 0;  // reported distance (clamped to max_range_cm)
  bool reliable = false;   // true distance within the reliable envelope
  bool hit = false;        // an obstacle (or wall) actually echoed
  std::optional<Cell> obstacle_cell;
  Cell from{0, 0};
  int direction = kForward;
};

// Cast a ray from the robot's cell along a move direction. Distances are
// center-to-center multiples of the cell size. Leaving the map counts as
// a wall hit at the first outside cell.
inline UltrasonicReading ultrasonic_read(const GridMap& map, Cell from, int direction,
                                         const UltrasonicModel& u, SplitMix64& rng) {
  UltrasonicReading r;
  r.from = from;
  r.direction = direction;
  double true_dist = u.max_range_cm;
  Cell probe = from;
  for (int k = 1;; ++k) {
    probe = apply_move(probe, direction);
    const double dist = k * map.cell_size_cm;
    if (dist > u.max_range_cm) break;
    if (map.is_blocked(probe)) {
      r.hit = true;
      r.obstacle_cell = probe;
      true_dist = dist;
      break;
    }
  }
  r.reliable = r.hit && true_dist <= u.reliable_range_cm;
  double reported = true_dist;
  if (r.hit) {
    const double sd = r.reliable ? u.within_range_noise_cm : u.beyond_range_noise_cm;
    if (sd > 0) reported += rng.gaussian(sd);
  }
  r.distance_cm = std::min(std::max(reported, 0.0), u.max_range_cm);
  return r;
}

// One forward cell step: advance the cell, bank encoder ticks for the
// cell-size distance on both wheels, and apply lateral drift. The drift
// magnitude is uniform in [min, max] scaled from the 50 cm reference to
// the cell size, with a random sign. Re-centering zeroes the stored
// offset on arrival; the increment is returned so traces can report it.
inline double forward_step(RobotState& state, int move, const GridMap& map,
                           const EncoderSpec& enc, const DriftModel& drift,
                           SplitMix64& rng) {
  const Cell next = apply_move(state.cell, move);
  if (!map.is_free(next))
    throw Error("BlockedAhead: cell " + std::to_string(next.row) + "," +
                std::to_string(next.col) + " is not free");
  state.cell = next;
  const long ticks = ticks_for_distance(map.cell_size_cm, enc);
  state.encoder_left += ticks;
  state.encoder_right += ticks;
  double step_drift = 0;
  if (drift.max_cm > 0) {
    const double scale = map.cell_size_cm / kDriftReferenceCm;
    const double magnitude = rng.uniform(drift.min_cm, drift.max_cm) * scale;
    step_drift = magnitude * rng.sign();
    state.lateral_offset_cm += step_drift;
  }
  if (drift.recenter_on_arrival) state.lateral_offset_cm = 0;
  return step_drift;
}

}  // namespace gridnav
