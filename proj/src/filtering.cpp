#include "beamtrim/filtering.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "beamtrim/errors.hpp"
#include "beamtrim/parallel.hpp"

namespace beamtrim {

namespace {

constexpr double kGapTolerance = 1e-9;

struct VoxelKey {
  std::int64_t x, y, z;
  bool operator==(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
  std::size_t operator()(const VoxelKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.x) * 73856093ULL;
    h ^= static_cast<std::uint64_t>(k.y) * 19349663ULL;
    h ^= static_cast<std::uint64_t>(k.z) * 83492791ULL;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

void FilterConfig::validate() const {
  if (!(voxel_size > 0.0)) throw ConfigError("voxel_size must be positive");
  if (k < 4) throw ConfigError("k must be at least 4");
  if (!(c_tau > 0.0)) throw ConfigError("c_tau must be positive");
  if (!(curvature_max > 0.0)) throw ConfigError("curvature_max must be positive");
  if (!(xi > 0.0)) throw ConfigError("xi must be positive");
}

RawScan voxel_grid(const RawScan& scan, double voxel_size) {
  if (!(voxel_size > 0.0)) throw ConfigError("voxel_size must be positive");

  std::unordered_map<VoxelKey, std::size_t, VoxelKeyHash> slots;
  slots.reserve(scan.size());
  std::vector<Vec3> sums;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> slot_of(scan.size());

  for (std::size_t i = 0; i < scan.size(); ++i) {
    const Vec3& p = scan.points[i].position;
    const VoxelKey key{static_cast<std::int64_t>(std::floor(p.x() / voxel_size)),
                       static_cast<std::int64_t>(std::floor(p.y() / voxel_size)),
                       static_cast<std::int64_t>(std::floor(p.z() / voxel_size))};
    auto [it, inserted] = slots.try_emplace(key, sums.size());
    if (inserted) {
      sums.push_back(Vec3::Zero());
      counts.push_back(0);
    }
    sums[it->second] += p;
    ++counts[it->second];
    slot_of[i] = it->second;
  }

  std::vector<Vec3> centroids(sums.size());
  for (std::size_t s = 0; s < sums.size(); ++s) centroids[s] = sums[s] / static_cast<double>(counts[s]);

  std::vector<std::size_t> representative(sums.size(), scan.size());
  std::vector<double> best(sums.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const std::size_t s = slot_of[i];
    const double d = (scan.points[i].position - centroids[s]).squaredNorm();
    if (d < best[s]) {
      best[s] = d;
      representative[s] = i;
    }
  }

  RawScan out;
  out.timestamp = scan.timestamp;
  out.intrinsics = scan.intrinsics;
  out.points.reserve(sums.size());
  for (std::size_t s = 0; s < sums.size(); ++s) {
    const ScanPoint& rep = scan.points[representative[s]];
    out.points.emplace_back(centroids[s], rep.ring, rep.column);
  }
  return out;
}

Neighborhood make_neighborhood(const Vec3& center, const std::vector<Vec3>& points) {
  Neighborhood nb;
  nb.center = center;
  nb.data.resize(static_cast<Eigen::Index>(points.size()), 3);
  Vec3 mean = Vec3::Zero();
  for (const auto& p : points) mean += p;
  mean /= static_cast<double>(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    nb.data.row(static_cast<Eigen::Index>(i)) = (points[i] - mean).transpose();
  }
  return nb;
}

Neighborhood knn_neighborhood(const KdTree& tree, std::size_t index, int k) {
  if (k < 1 || tree.size() < static_cast<std::size_t>(k)) {
    throw InsufficientPoints("cloud has fewer points than the neighborhood size");
  }
  const Vec3& query = tree.points().at(index);
  const auto neighbors = tree.knn(query, static_cast<std::size_t>(k));
  std::vector<Vec3> pts;
  pts.reserve(neighbors.size());
  for (const auto& n : neighbors) pts.push_back(tree.points()[n.index]);
  return make_neighborhood(query, pts);
}

Neighborhood knn_neighborhood(const RawScan& cloud, std::size_t index, int k) {
  return knn_neighborhood(KdTree(cloud.positions()), index, k);
}

SvdResult decompose(const Eigen::MatrixX3d& data) {
  Eigen::JacobiSVD<Eigen::MatrixX3d> svd(data, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult out;
  out.U = svd.matrixU();
  out.S = svd.singularValues();
  out.V = svd.matrixV();
  return out;
}

NormalEstimate svd_normal(const Neighborhood& nb) {
  if (nb.k() < 3) throw InsufficientPoints("a neighborhood needs at least 3 points");
  NormalEstimate est;
  est.svd = decompose(nb.data);
  const Vec3& s = est.svd.S;
  if (s[0] < 1e-12) throw DegenerateNeighborhood("neighborhood points coincide");

  // Flip U and V together so that U S V^T still reproduces the data.
  if (est.svd.V.col(2).dot(nb.center) > 0.0) {
    est.svd.V.col(2) *= -1.0;
    est.svd.U.col(2) *= -1.0;
  }
  est.normal = est.svd.V.col(2);
  const Vec3 lambda = s.cwiseAbs2() / static_cast<double>(nb.k());
  est.curvature = lambda[2] / lambda.sum();
  return est;
}

bool has_singular_gap(const SvdResult& svd) {
  const Vec3 s2 = svd.S.cwiseAbs2();
  const double eps = kGapTolerance * s2[0];
  return std::abs(s2[0] - s2[2]) > eps && std::abs(s2[1] - s2[2]) > eps;
}

Vec3 svd_jacobian_entry(const SvdResult& svd, int i, int j) {
  if (!has_singular_gap(svd)) {
    throw SingularValueCollapse("singular values too close to recover the normal derivative");
  }
  const Vec3& s = svd.S;
  const double u2 = svd.U(i, 2);
  const double v2 = svd.V(j, 2);
  std::array<double, 2> omega{};
  for (int l = 0; l < 2; ++l) {
    // [U^T E_ij V]_{a,b} = U(i,a) V(j,b)
    const double a_l2 = svd.U(i, l) * v2;
    const double a_2l = u2 * svd.V(j, l);
    omega[l] = (s[l] * a_l2 + s[2] * a_2l) / (s[l] * s[l] - s[2] * s[2]);
  }
  return -(svd.V.col(0) * omega[0] + svd.V.col(1) * omega[1]);
}

Mat3 normal_covariance(const SvdResult& svd, double xi) {
  if (!has_singular_gap(svd)) {
    throw SingularValueCollapse("singular values too close to propagate normal covariance");
  }
  Mat3 acc = Mat3::Zero();
  const auto rows = static_cast<int>(svd.U.rows());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vec3 jac = svd_jacobian_entry(svd, i, j);
      acc.noalias() += jac * jac.transpose();
    }
  }
  return xi * xi * acc;
}

double uncertainty_scalar(const Mat3& cov, const Vec3& /*normal*/) {
  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

std::vector<PointAnalysis> analyze_points(const RawScan& voxelized, const FilterConfig& cfg) {
  const KdTree tree(voxelized.positions());
  if (tree.size() < static_cast<std::size_t>(cfg.k)) {
    throw InsufficientPoints("too few voxel centroids for the neighborhood size");
  }
  std::vector<PointAnalysis> out(voxelized.size());
  parallel_for(voxelized.size(), [&](std::size_t idx) {
    PointAnalysis& a = out[idx];
    NormalEstimate est;
    try {
      est = svd_normal(knn_neighborhood(tree, idx, cfg.k));
    } catch (const DegenerateNeighborhood&) {
      a.status = PointAnalysis::Status::kDegenerate;
      return;
    }
    a.normal = est.normal;
    a.curvature = est.curvature;
    if (!cfg.ncf_enabled) {
      a.uncertainty = 0.0;
      return;
    }
    if (!has_singular_gap(est.svd)) {
      a.status = PointAnalysis::Status::kCollapse;
      return;
    }
    a.uncertainty = uncertainty_scalar(normal_covariance(est.svd, cfg.xi), est.normal);
  });
  return out;
}

bool passes_filter(const PointAnalysis& a, const FilterConfig& cfg) {
  if (a.status != PointAnalysis::Status::kOk) return false;
  if (cfg.ncf_enabled && a.uncertainty >= cfg.c_tau) return false;
  return a.curvature <= cfg.curvature_max;
}

FeatureCloud filter_points(const RawScan& scan, const FilterConfig& cfg) {
  cfg.validate();
  const RawScan voxels = voxel_grid(scan, cfg.voxel_size);
  FeatureCloud out;
  out.timestamp = scan.timestamp;
  out.intrinsics = scan.intrinsics;
  out.source_size = scan.size();
  if (voxels.size() < static_cast<std::size_t>(cfg.k)) {
    throw EmptyOutput("too few points left after voxel filtering");
  }
  const auto analysis = analyze_points(voxels, cfg);
  for (std::size_t i = 0; i < voxels.size(); ++i) {
    if (!passes_filter(analysis[i], cfg)) continue;
    const ScanPoint& sp = voxels.points[i];
    FeaturePoint fp;
    fp.position = sp.position;
    fp.normal = analysis[i].normal;
    fp.normal_uncertainty = analysis[i].uncertainty;
    fp.curvature = analysis[i].curvature;
    fp.ring = sp.ring;
    fp.column = sp.column;
    fp.range = sp.range;
    out.points.push_back(fp);
  }
  if (out.empty()) throw EmptyOutput("every point was rejected by the filter");
  return out;
}

}  // namespace beamtrim
