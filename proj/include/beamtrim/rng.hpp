#pragma once

#include <cstdint>

#include "beamtrim/geometry.hpp"

namespace beamtrim {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based generator: draw n of stream s under seed is
/// mix64(key(seed, s) + n * 0x9E3779B97F4A7C15) with
/// key(seed, s) = mix64(seed ^ mix64(s + 0x9E3779B97F4A7C15)).
/// Draws never depend on how many other streams were consumed, so per-ray or
/// per-trial streams give schedule-independent results.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller, one value per two uniforms).
  double normal();
  /// Uniform direction on the unit sphere.
  Vec3 unit_vector();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace beamtrim
