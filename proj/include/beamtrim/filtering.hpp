#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <limits>
#include <vector>

#include "beamtrim/geometry.hpp"
#include "beamtrim/kdtree.hpp"
#include "beamtrim/scan.hpp"

namespace beamtrim {

struct FilterConfig {
  double voxel_size = 0.4;  // meters
  int k = 30;
  /// Normal covariance threshold; points with uncertainty >= c_tau are dropped.
  double c_tau = 2e-4;
  double curvature_max = 0.1;
  double xi = 0.02;  // range noise std, meters
  /// When false the normal covariance stage is skipped (baseline filtering).
  bool ncf_enabled = true;

  void validate() const;
};

/// k points around a query, mean-centered. data is k x 3.
struct Neighborhood {
  Vec3 center = Vec3::Zero();
  Eigen::MatrixX3d data;

  int k() const { return static_cast<int>(data.rows()); }
};

/// Thin SVD data = U diag(S) V^T with S sorted descending; V.col(2) is the normal.
struct SvdResult {
  Eigen::MatrixX3d U;
  Vec3 S = Vec3::Zero();
  Mat3 V = Mat3::Identity();
};

struct NormalEstimate {
  Vec3 normal = Vec3::UnitZ();
  SvdResult svd;
  double curvature = 0.0;
};

/// Centroid per occupied voxel; each centroid inherits ring and column of the
/// member closest to it. Output order follows first occupancy in the input.
RawScan voxel_grid(const RawScan& scan, double voxel_size);

Neighborhood make_neighborhood(const Vec3& center, const std::vector<Vec3>& points);
/// k nearest points of cloud[index] (the query included). Throws InsufficientPoints.
Neighborhood knn_neighborhood(const KdTree& tree, std::size_t index, int k);
Neighborhood knn_neighborhood(const RawScan& cloud, std::size_t index, int k);

SvdResult decompose(const Eigen::MatrixX3d& data);

/// Normal oriented toward the sensor origin, plus curvature lambda2 / sum(lambda).
/// Throws DegenerateNeighborhood when all points coincide.
NormalEstimate svd_normal(const Neighborhood& nb);

/// True when S0^2 and S1^2 are both separated from S2^2 by more than 1e-9 * S0^2.
bool has_singular_gap(const SvdResult& svd);

/// Derivative of the normal V.col(2) with respect to data(i, j). Throws
/// SingularValueCollapse without a singular gap.
Vec3 svd_jacobian_entry(const SvdResult& svd, int i, int j);

/// xi^2 * sum_ij J_ij J_ij^T: the normal covariance under isotropic coordinate
/// noise with standard deviation xi.
Mat3 normal_covariance(const SvdResult& svd, double xi);

/// Largest eigenvalue of the normal covariance.
double uncertainty_scalar(const Mat3& cov, const Vec3& normal);

/// Per-point outcome of normal estimation on an already voxelized cloud.
struct PointAnalysis {
  enum class Status { kOk, kDegenerate, kCollapse };
  Status status = Status::kOk;
  Vec3 normal = Vec3::UnitZ();
  double curvature = 0.0;
  /// +inf when the singular gap collapsed.
  double uncertainty = std::numeric_limits<double>::infinity();
};

std::vector<PointAnalysis> analyze_points(const RawScan& voxelized, const FilterConfig& cfg);

bool passes_filter(const PointAnalysis& a, const FilterConfig& cfg);

/// voxel grid -> normals and covariance -> normal covariance threshold ->
/// curvature threshold. Throws EmptyOutput when nothing survives.
FeatureCloud filter_points(const RawScan& scan, const FilterConfig& cfg);

}  // namespace beamtrim
