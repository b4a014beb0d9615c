#pragma once
// Compass angle helpers. Bearings are degrees, clockwise, north = 0.

#include <cmath>

namespace gridnav {

// Normalize to [0, 360).
inline double wrap360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r = 0.0;
  return r;
}

// Smallest signed difference, in (-180, 180].
inline double wrap_signed(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r > 180.0) r -= 360.0;
  if (r <= -180.0) r += 360.0;
  return r;
}

// Signed angular error target - measured, in (-180, 180]. Positive means
// the shortest correction is clockwise.
inline double bearing_error(double measured_deg, double target_deg) {
  return wrap_signed(target_deg - measured_deg);
}

}  // namespace gridnav
