#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "beamtrim/correspondence.hpp"
#include "beamtrim/geometry.hpp"
#include "beamtrim/scan.hpp"
#include "beamtrim/trajectory.hpp"

namespace beamtrim {

enum class Rejector {
  kDistance,       // "dst"
  kGeometric,      // "geom"
  kGeometricTrim,  // "geom+trim"
};

std::string_view to_string(Rejector r);
/// Throws ConfigError for unknown names.
Rejector parse_rejector(std::string_view name);

struct IcpConfig {
  int max_iterations = 30;
  double abs_trans_eps = 1e-4;  // meters
  double abs_rot_eps = 1e-5;    // radians
  /// Stop once the increment magnitude changes by less than this fraction
  /// between consecutive iterations (the loop has stalled).
  double rel_eps = 1e-3;
  Rejector rejector = Rejector::kGeometricTrim;
  double trim_fraction = 0.2;
  double max_distance = 1.0;  // meters, distance rejector only
  /// Tikhonov damping, relative to trace(H) / 6.
  double damping = 1e-6;

  void validate() const;
};

enum class TerminationReason { kAbsEps, kRelEps, kMaxIter, kEmptyMatches, kDegenerateSystem };

std::string_view to_string(TerminationReason r);

struct IcpReport {
  RigidTransform final_transform;
  int iterations = 0;
  std::vector<std::size_t> match_counts;
  /// Point-to-plane cost over accepted matches at the start of each iteration.
  std::vector<double> costs;
  TerminationReason reason = TerminationReason::kMaxIter;
};

/// Constant-velocity prediction of the next inter-frame increment. The last
/// increment is scaled in the tangent space by the ratio of the upcoming time
/// step to the previous one (1 without timestamps).
RigidTransform extrapolate_init(const Trajectory& history,
                                std::optional<double> next_timestamp = std::nullopt);

/// Gauss-Newton system of the point-to-plane cost sum(((p_k - q_k) . n_k)^2)
/// for an increment (omega, tau) applied as p -> p + omega x p + tau.
struct NormalEquations {
  Mat6 hessian = Mat6::Zero();
  Vec6 gradient = Vec6::Zero();  // half the cost gradient
  double cost = 0.0;
  std::size_t count = 0;
};

NormalEquations build_normal_equations(std::span<const Vec3> source_positions, const FeatureCloud& target,
                                       const CorrespondenceSet& matches);

/// Cost after moving the source positions by `delta`, matches held fixed.
double point_to_plane_cost(std::span<const Vec3> source_positions, const FeatureCloud& target,
                           const CorrespondenceSet& matches, const RigidTransform& delta = {});

/// Solves for the increment and retracts it with the exponential map.
/// Throws DegenerateSystem when the undamped system's condition number exceeds 1e12.
RigidTransform solve_increment(const NormalEquations& ne, double damping);

RigidTransform estimate_point_to_plane(const FeatureCloud& source, const FeatureCloud& target,
                                       const CorrespondenceSet& matches, double damping = 1e-6);

/// Aligns source onto target starting from init: match, reject, estimate and
/// left-compose the increment until a termination criterion fires. The
/// returned transform maps source sensor coordinates into the target frame.
IcpReport icp_align(const FeatureCloud& target, const FeatureCloud& source, const RigidTransform& init,
                    const IcpConfig& cfg);

}  // namespace beamtrim
