#pragma once
// Deterministic random number generation. Every stochastic piece of the
// stack (SA proposals, sensor noise, drift) draws from SplitMix64 so that
// a (scenario, seed) pair reproduces bit-identical runs on any platform.
// The algorithm identifier below is recorded in trace files.

#include <cmath>
#include <cstdint>

namespace gridnav {

inline constexpr const char* kRngAlgorithm = "splitmix64";

struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }

  // Uniform integer in [0, n); n must be > 0.
  uint64_t next_below(uint64_t n) { return next_u64() % n; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // +1 or -1, equiprobable.
  double sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

  // One draw from N(0, sd^2) via Box-Muller. Consumes two uniforms.
  double gaussian(double sd) {
    double u1 = 1.0 - next_double();  // (0, 1]
    double u2 = next_double();
    return sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
};

// Derives an independent stream from a base seed and a salt (used to seed
// SA re-runs after replans without disturbing the mission stream).
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  SplitMix64 m(seed ^ (0xA0761D6478BD642FULL * (salt + 1)));
  return m.next_u64();
}

}  // namespace gridnav
