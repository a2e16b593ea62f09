#include "beamtrim/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "beamtrim/errors.hpp"

namespace beamtrim {

ErrorStats ErrorStats::from_errors(std::vector<double> errors, double segment_length) {
  ErrorStats s;
  s.segment_length = segment_length;
  s.per_segment_errors = std::move(errors);
  if (s.per_segment_errors.empty()) return s;
  const double n = static_cast<double>(s.per_segment_errors.size());
  double sum = 0.0;
  for (double e : s.per_segment_errors) sum += e;
  s.mean = sum / n;
  double var = 0.0;
  for (double e : s.per_segment_errors) var += (e - s.mean) * (e - s.mean);
  s.stddev = std::sqrt(var / n);
  return s;
}

ErrorStats relative_error(const Trajectory& estimate, const Trajectory& ground_truth, double segment) {
  if (estimate.size() != ground_truth.size()) {
    throw std::invalid_argument("trajectory lengths differ: " + std::to_string(estimate.size()) + " vs " +
                                std::to_string(ground_truth.size()));
  }
  if (!(segment > 0.0)) throw std::invalid_argument("segment length must be positive");
  const auto& gt = ground_truth.poses;
  const std::size_t n = gt.size();

  std::vector<double> dist(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    dist[i] = dist[i - 1] + (gt[i].translation() - gt[i - 1].translation()).norm();
  }

  std::vector<double> errors;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < i) j = i;
    while (j < n && dist[j] - dist[i] < segment) ++j;
    if (j == n) break;
    const RigidTransform d_gt = gt[i].inverse() * gt[j];
    const RigidTransform d_est = estimate.poses[i].inverse() * estimate.poses[j];
    errors.push_back((d_gt.inverse() * d_est).translation().norm());
  }
  if (errors.empty()) {
    throw TrajectoryTooShort("ground-truth path of " + std::to_string(n ? dist.back() : 0.0) +
                             " m is shorter than one " + std::to_string(segment) + " m segment");
  }
  return ErrorStats::from_errors(std::move(errors), segment);
}

std::string format_stats_table(const std::vector<std::string>& names, const std::vector<ErrorStats>& stats) {
  std::string out = "sequence\tμ\tσ\tsegments\n";
  char buf[128];
  for (std::size_t i = 0; i < stats.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "\t%.3f\t%.3f\t%zu\n", stats[i].mean, stats[i].stddev,
                  stats[i].per_segment_errors.size());
    out += (i < names.size() ? names[i] : std::to_string(i)) + buf;
  }
  return out;
}

}  // namespace beamtrim
