#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beamtrim/odometry.hpp"
#include "beamtrim/registration.hpp"
#include "beamtrim/scan.hpp"

namespace beamtrim {

struct NoiseLevel {
  double translation = 0.0;  // l_t, meters
  double rotation = 0.0;     // l_r, radians
};

/// (0.1 m, 1 deg), (0.5 m, 5 deg), (1.0 m, 10 deg).
std::vector<NoiseLevel> default_noise_levels();

struct BenchSpec {
  std::vector<NoiseLevel> levels = default_noise_levels();
  std::size_t trials = 100;
  std::string scene = "street";
  std::uint64_t seed = 1;
  LidarIntrinsics intrinsics = default_intrinsics();
  OdometryConfig cfg;
};

struct BenchTrial {
  std::size_t level = 0;
  std::size_t trial = 0;
  double dst_translation = 0.0;
  double geom_translation = 0.0;
  double dst_rotation = 0.0;  // radians, logged only
  double geom_rotation = 0.0;
  int dst_iterations = 0;
  int geom_iterations = 0;
  TerminationReason dst_reason = TerminationReason::kMaxIter;
  TerminationReason geom_reason = TerminationReason::kMaxIter;
};

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

/// Linear interpolation between order statistics. Empty input gives zeros.
Quartiles quartiles(std::vector<double> values);

struct BenchLevelSummary {
  NoiseLevel level;
  Quartiles dst;
  Quartiles geom;
};

struct BenchReport {
  std::vector<BenchTrial> trials;
  std::vector<BenchLevelSummary> levels;
};

/// Simulates `trials` scan pairs with known relative motion once and reuses
/// them at every noise level. Each trial aligns from GT * perturbation with
/// the distance rejector and with the neighbor beam rejector. Trials run in
/// parallel; every random draw is keyed by (seed, level, trial).
BenchReport bench_rejectors(const BenchSpec& spec);

/// Per-level table: l_t, l_r (deg), then q1/median/q3 for dst and geom.
std::string format_bench_table(const BenchReport& report);
/// One row per trial including the rotation errors.
std::string format_bench_trials(const BenchReport& report);

}  // namespace beamtrim
