#include "beamtrim/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "beamtrim/filtering.hpp"
#include "beamtrim/parallel.hpp"
#include "beamtrim/registration.hpp"
#include "beamtrim/rng.hpp"
#include "beamtrim/simulation.hpp"

namespace beamtrim {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Streams: 0 pair placement, 1 scan noise, 2.. perturbations per level.
constexpr std::uint64_t kPairStream = 0;
constexpr std::uint64_t kNoiseStream = 1;

struct ScanPair {
  FeatureCloud target;
  FeatureCloud source;
  RigidTransform gt;  // source sensor -> target sensor
};

ScanPair make_pair(const BenchSpec& spec, const Scene& scene, const Trajectory& drive, std::size_t trial) {
  CounterRng rng(spec.seed ^ (trial * 0x9e3779b97f4a7c15ULL), kPairStream);
  const auto frame = static_cast<std::size_t>(rng.uniform() * static_cast<double>(drive.size()));
  const RigidTransform a = drive.poses[std::min(frame, drive.size() - 1)];
  const double yaw = rng.uniform(-3.0, 3.0) * kDeg;
  const RigidTransform gt(rotation_exp(Vec3::UnitZ() * yaw),
                          Vec3(rng.uniform(0.5, 2.0), rng.uniform(-0.2, 0.2), rng.uniform(-0.02, 0.02)));
  const std::uint64_t noise_seed = mix64(spec.seed + kNoiseStream) ^ trial;
  const RawScan ra = simulate_scan(scene, a, spec.intrinsics, noise_seed, 0.0);
  const RawScan rb = simulate_scan(scene, a * gt, spec.intrinsics, noise_seed ^ 0x5bd1e995ULL, 0.1);
  return {filter_points(ra, spec.cfg.filter), filter_points(rb, spec.cfg.filter), gt};
}

struct AlignOutcome {
  double translation = 0.0;
  double rotation = 0.0;
  int iterations = 0;
  TerminationReason reason = TerminationReason::kMaxIter;
};

AlignOutcome align(const ScanPair& pair, const RigidTransform& init, IcpConfig cfg, Rejector rejector) {
  cfg.rejector = rejector;
  const IcpReport rep = icp_align(pair.target, pair.source, init, cfg);
  const RigidTransform err = pair.gt.inverse() * rep.final_transform;
  return {(rep.final_transform.translation() - pair.gt.translation()).norm(), err.angle(), rep.iterations,
          rep.reason};
}

void print_quartiles(std::string& out, const Quartiles& q) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "\t%.6f\t%.6f\t%.6f", q.q1, q.median, q.q3);
  out += buf;
}

}  // namespace

std::vector<NoiseLevel> default_noise_levels() {
  return {{0.1, 1.0 * kDeg}, {0.5, 5.0 * kDeg}, {1.0, 10.0 * kDeg}};
}

Quartiles quartiles(std::vector<double> v) {
  if (v.empty()) return {};
  std::sort(v.begin(), v.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return {at(0.25), at(0.5), at(0.75)};
}

BenchReport bench_rejectors(const BenchSpec& spec) {
  const Scene scene = standard_scene(spec.scene);
  const Trajectory drive = standard_drive(spec.scene, 100);

  std::vector<ScanPair> pairs(spec.trials);
  parallel_for(spec.trials, [&](std::size_t t) { pairs[t] = make_pair(spec, scene, drive, t); });

  BenchReport report;
  report.trials.resize(spec.levels.size() * spec.trials);
  parallel_for(report.trials.size(), [&](std::size_t idx) {
    const std::size_t level = idx / spec.trials;
    const std::size_t trial = idx % spec.trials;
    const NoiseLevel& nl = spec.levels[level];
    const ScanPair& pair = pairs[trial];
    const RigidTransform pert = sample_perturbation(
        {nl.rotation, nl.translation, mix64(spec.seed ^ mix64(2 + level)) + trial});
    const RigidTransform init = pair.gt * pert;
    BenchTrial& row = report.trials[idx];
    row.level = level;
    row.trial = trial;
    const AlignOutcome dst = align(pair, init, spec.cfg.icp, Rejector::kDistance);
    const AlignOutcome geom = align(pair, init, spec.cfg.icp, Rejector::kGeometric);
    row.dst_translation = dst.translation;
    row.dst_rotation = dst.rotation;
    row.dst_iterations = dst.iterations;
    row.dst_reason = dst.reason;
    row.geom_translation = geom.translation;
    row.geom_rotation = geom.rotation;
    row.geom_iterations = geom.iterations;
    row.geom_reason = geom.reason;
  });

  for (std::size_t level = 0; level < spec.levels.size(); ++level) {
    std::vector<double> dst;
    std::vector<double> geom;
    for (const auto& row : report.trials) {
      if (row.level != level) continue;
      dst.push_back(row.dst_translation);
      geom.push_back(row.geom_translation);
    }
    report.levels.push_back({spec.levels[level], quartiles(dst), quartiles(geom)});
  }
  return report;
}

std::string format_bench_table(const BenchReport& report) {
  std::string out = "l_t_m\tl_r_deg\tdst_q1\tdst_median\tdst_q3\tgeom_q1\tgeom_median\tgeom_q3\n";
  char buf[64];
  for (const auto& lv : report.levels) {
    std::snprintf(buf, sizeof(buf), "%.3f\t%.3f", lv.level.translation, lv.level.rotation / kDeg);
    out += buf;
    print_quartiles(out, lv.dst);
    print_quartiles(out, lv.geom);
    out += '\n';
  }
  return out;
}

std::string format_bench_trials(const BenchReport& report) {
  std::string out =
      "level\ttrial\tdst_trans_m\tgeom_trans_m\tdst_rot_rad\tgeom_rot_rad\tdst_iter\tgeom_iter\tdst_stop\tgeom_stop\n";
  char buf[192];
  for (const auto& r : report.trials) {
    std::snprintf(buf, sizeof(buf), "%zu\t%zu\t%.9f\t%.9f\t%.9f\t%.9f\t%d\t%d\t", r.level, r.trial,
                  r.dst_translation, r.geom_translation, r.dst_rotation, r.geom_rotation, r.dst_iterations,
                  r.geom_iterations);
    out += buf;
    out += std::string(to_string(r.dst_reason)) + '\t' + std::string(to_string(r.geom_reason)) + '\n';
  }
  return out;
}

}  // namespace beamtrim
