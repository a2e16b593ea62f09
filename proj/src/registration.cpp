#include "beamtrim/registration.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "beamtrim/errors.hpp"
#include "beamtrim/kdtree.hpp"

namespace beamtrim {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr std::size_t kMinMatches = 6;

double increment_magnitude(const RigidTransform& delta) {
  return delta.translation().norm() + delta.angle();
}

}  // namespace

std::string_view to_string(Rejector r) {
  switch (r) {
    case Rejector::kDistance:
      return "dst";
    case Rejector::kGeometric:
      return "geom";
    case Rejector::kGeometricTrim:
      return "geom+trim";
  }
  return "?";
}

Rejector parse_rejector(std::string_view name) {
  if (name == "dst") return Rejector::kDistance;
  if (name == "geom") return Rejector::kGeometric;
  if (name == "geom+trim") return Rejector::kGeometricTrim;
  throw ConfigError("unknown rejector '" + std::string(name) + "' (expected dst, geom or geom+trim)");
}

std::string_view to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::kAbsEps:
      return "absEps";
    case TerminationReason::kRelEps:
      return "relEps";
    case TerminationReason::kMaxIter:
      return "maxIter";
    case TerminationReason::kEmptyMatches:
      return "emptyMatches";
    case TerminationReason::kDegenerateSystem:
      return "degenerateSystem";
  }
  return "?";
}

void IcpConfig::validate() const {
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (!(abs_trans_eps > 0.0 && abs_rot_eps > 0.0 && rel_eps > 0.0)) {
    throw ConfigError("termination thresholds must be positive");
  }
  if (!(trim_fraction >= 0.0 && trim_fraction < 1.0)) throw ConfigError("trim_fraction must lie in [0, 1)");
  if (!(max_distance > 0.0)) throw ConfigError("max_distance must be positive");
  if (!(damping >= 0.0)) throw ConfigError("damping must be non-negative");
}

RigidTransform extrapolate_init(const Trajectory& history, std::optional<double> next_timestamp) {
  const std::size_t n = history.size();
  if (n < 2) return RigidTransform::Identity();
  const RigidTransform last = history.poses[n - 2].inverse() * history.poses[n - 1];

  double scale = 1.0;
  if (next_timestamp && history.has_timestamps()) {
    const double prev_dt = history.timestamps[n - 1] - history.timestamps[n - 2];
    const double next_dt = *next_timestamp - history.timestamps[n - 1];
    if (prev_dt > 0.0 && next_dt >= 0.0) scale = next_dt / prev_dt;
  }
  try {
    return exp_map(log_map(last) * scale);
  } catch (const AngleNearPi&) {
    return RigidTransform::Identity();
  }
}

NormalEquations build_normal_equations(std::span<const Vec3> source_positions, const FeatureCloud& target,
                                       const CorrespondenceSet& matches) {
  NormalEquations ne;
  // Sequential accumulation keeps the sums reproducible.
  for (const auto& m : matches.matches) {
    const Vec3& p = source_positions[m.source_index];
    const FeaturePoint& q = target.points[m.target_index];
    const double r = (p - q.position).dot(q.normal);
    Vec6 row;
    row.head<3>() = p.cross(q.normal);
    row.tail<3>() = q.normal;
    ne.hessian.noalias() += row * row.transpose();
    ne.gradient += row * r;
    ne.cost += r * r;
  }
  ne.count = matches.size();
  return ne;
}

double point_to_plane_cost(std::span<const Vec3> source_positions, const FeatureCloud& target,
                           const CorrespondenceSet& matches, const RigidTransform& delta) {
  double cost = 0.0;
  for (const auto& m : matches.matches) {
    const FeaturePoint& q = target.points[m.target_index];
    const double r = (delta * source_positions[m.source_index] - q.position).dot(q.normal);
    cost += r * r;
  }
  return cost;
}

RigidTransform solve_increment(const NormalEquations& ne, double damping) {
  if (ne.count < kMinMatches) throw DegenerateSystem("too few matches to constrain six degrees of freedom");
  Eigen::SelfAdjointEigenSolver<Mat6> eig(ne.hessian, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || !(lo > 0.0) || hi / lo > kMaxCondition) {
    throw DegenerateSystem("point-to-plane system is rank deficient");
  }

  // Damped solve followed by refinement sweeps against the undamped system, so
  // the damping stabilizes the factorization without biasing the step.
  const double lambda = damping * ne.hessian.trace() / 6.0;
  const Mat6 damped = ne.hessian + lambda * Mat6::Identity();
  const Eigen::LDLT<Mat6> ldlt(damped);
  Vec6 x = ldlt.solve(-ne.gradient);
  for (int sweep = 0; sweep < 3; ++sweep) {
    x += ldlt.solve(-ne.gradient - ne.hessian * x);
  }
  return exp_map({x.head<3>(), x.tail<3>()});
}

RigidTransform estimate_point_to_plane(const FeatureCloud& source, const FeatureCloud& target,
                                       const CorrespondenceSet& matches, double damping) {
  const auto src = source.positions();
  return solve_increment(build_normal_equations(src, target, matches), damping);
}

IcpReport icp_align(const FeatureCloud& target, const FeatureCloud& source, const RigidTransform& init,
                    const IcpConfig& cfg) {
  cfg.validate();
  IcpReport report;
  report.final_transform = init;
  if (target.empty() || source.empty()) {
    report.reason = TerminationReason::kEmptyMatches;
    return report;
  }

  const KdTree tree(target.positions());
  const std::vector<Vec3> original = source.positions();

  // Neighbor beam thresholds live in the source sensor frame, so they are
  // fixed for the whole alignment.
  std::vector<std::optional<double>> thresholds;
  if (cfg.rejector != Rejector::kDistance) {
    thresholds.reserve(source.size());
    for (const auto& p : source.points) thresholds.push_back(gcr_threshold(p, source.intrinsics));
  }

  RigidTransform current = init;
  std::vector<Vec3> moved(original.size());
  double previous_magnitude = std::numeric_limits<double>::quiet_NaN();

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    for (std::size_t i = 0; i < original.size(); ++i) moved[i] = current * original[i];

    CorrespondenceSet matches = match_nearest(moved, tree);
    switch (cfg.rejector) {
      case Rejector::kDistance:
        matches = distance_reject(matches, cfg.max_distance);
        break;
      case Rejector::kGeometric:
      case Rejector::kGeometricTrim: {
        CorrespondenceSet kept;
        kept.matches.reserve(matches.size());
        for (const auto& m : matches.matches) {
          const auto& t = thresholds[m.source_index];
          if (!t || m.distance < *t) kept.matches.push_back(m);
        }
        matches = std::move(kept);
        if (cfg.rejector == Rejector::kGeometricTrim) matches = trim_matches(matches, cfg.trim_fraction);
        break;
      }
    }
    report.match_counts.push_back(matches.size());
    if (matches.empty()) {
      report.final_transform = init;
      report.reason = TerminationReason::kEmptyMatches;
      return report;
    }

    const NormalEquations ne = build_normal_equations(moved, target, matches);
    report.costs.push_back(ne.cost);
    RigidTransform delta;
    try {
      delta = solve_increment(ne, cfg.damping);
    } catch (const DegenerateSystem&) {
      report.final_transform = init;
      report.reason = TerminationReason::kDegenerateSystem;
      return report;
    }

    current = delta * current;
    report.iterations = it;
    report.final_transform = current;

    const double dt = delta.translation().norm();
    const double dr = delta.angle();
    if (dt < cfg.abs_trans_eps && dr < cfg.abs_rot_eps) {
      report.reason = TerminationReason::kAbsEps;
      return report;
    }
    const double magnitude = increment_magnitude(delta);
    if (std::isfinite(previous_magnitude) &&
        std::abs(magnitude - previous_magnitude) <= cfg.rel_eps * previous_magnitude) {
      report.reason = TerminationReason::kRelEps;
      return report;
    }
    previous_magnitude = magnitude;
  }
  report.reason = TerminationReason::kMaxIter;
  return report;
}

}  // namespace beamtrim
