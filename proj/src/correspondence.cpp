#include "beamtrim/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "beamtrim/errors.hpp"
#include "beamtrim/parallel.hpp"

namespace beamtrim {

namespace {

constexpr double kVerticalTolerance = 1e-9;
constexpr double kGrazingRatio = 1e-3;

// nullopt on grazing incidence.
std::optional<double> beam_distance(const Vec3& normal, const Vec3& diag) {
  const double a = diag.squaredNorm();
  const double along_normal = diag.dot(normal);
  const double denom2 = a - along_normal * along_normal;
  if (denom2 < kGrazingRatio * kGrazingRatio * a) return std::nullopt;
  return a / std::sqrt(denom2);
}

}  // namespace

CorrespondenceSet match_nearest(std::span<const Vec3> source_positions, const KdTree& target) {
  CorrespondenceSet out;
  out.matches.resize(source_positions.size());
  parallel_for(source_positions.size(), [&](std::size_t i) {
    const auto nn = target.nearest(source_positions[i]);
    out.matches[i] = {i, nn.index, std::sqrt(nn.squared_distance)};
  });
  return out;
}

CorrespondenceSet match_nearest(const FeatureCloud& source, const FeatureCloud& target) {
  if (source.empty() || target.empty()) throw std::invalid_argument("matching needs two non-empty clouds");
  const KdTree tree(target.positions());
  const auto src = source.positions();
  return match_nearest(src, tree);
}

CorrespondenceSet trim_matches(const CorrespondenceSet& ms, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw std::invalid_argument("trim fraction must lie in [0, 1)");
  const std::size_t n = ms.size();
  // Round the kept count up; the epsilon absorbs products like 0.8 * 10 = 8.000000000000002.
  const auto keep = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::ceil((1.0 - fraction) * static_cast<double>(n) - 1e-9)));
  if (keep == n) return ms;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ms.matches[a].distance < ms.matches[b].distance;
  });
  std::vector<bool> kept(n, false);
  for (std::size_t i = 0; i < keep; ++i) kept[order[i]] = true;

  CorrespondenceSet out;
  out.matches.reserve(keep);
  for (std::size_t i = 0; i < n; ++i) {
    if (kept[i]) out.matches.push_back(ms.matches[i]);
  }
  return out;
}

CorrespondenceSet distance_reject(const CorrespondenceSet& ms, double max_distance) {
  if (!(max_distance > 0.0)) throw std::invalid_argument("max distance must be positive");
  CorrespondenceSet out;
  out.matches.reserve(ms.size());
  for (const auto& m : ms.matches) {
    if (m.distance < max_distance) out.matches.push_back(m);
  }
  return out;
}

bool is_vertical_beam(const Vec3& p) {
  return p.head<2>().norm() < kVerticalTolerance * std::max(1.0, p.norm());
}

Vec3 neighbor_diagonal(const FeaturePoint& p, const LidarIntrinsics& intrinsics, RingSide ring_side,
                       ColumnSide column_side) {
  const Vec3& pos = p.position;
  if (!(pos.norm() > 0.0)) throw std::invalid_argument("point at the sensor origin");
  if (is_vertical_beam(pos)) throw VerticalBeam("beam along the sensor z axis");

  const int direction = ring_side == RingSide::kUp ? 1 : -1;
  const int neighbor_ring = p.ring + direction;
  if (neighbor_ring < 0 || neighbor_ring >= intrinsics.ring_count) {
    throw std::out_of_range("no neighbor ring on the requested side");
  }
  const double theta = intrinsics.pitch_to(p.ring, direction);
  const double phi = intrinsics.azimuth_increment;

  // Azimuthal axis: the direction of p x p_ground, kept defined for horizontal beams.
  const Vec3 u = Vec3(-pos.y(), pos.x(), 0.0).normalized();
  // Elevation axis, pointing up.
  const Vec3 v = pos.cross(u).normalized();

  const double col_sign = column_side == ColumnSide::kRight ? 1.0 : -1.0;
  return (col_sign * phi * u + static_cast<double>(direction) * theta * v) * pos.norm();
}

double neighbor_beam_distance(const FeaturePoint& p, const Vec3& diag) {
  if (!(diag.squaredNorm() > 0.0)) throw std::invalid_argument("zero-length neighbor diagonal");
  const auto d = beam_distance(p.normal, diag);
  if (!d) throw GrazingIncidence("surface nearly parallel to the neighbor beam offset");
  return *d;
}

std::optional<double> gcr_threshold(const FeaturePoint& p, const LidarIntrinsics& intrinsics) {
  if (is_vertical_beam(p.position) || !(p.position.norm() > 0.0)) return std::nullopt;
  double best = 0.0;
  for (RingSide rs : {RingSide::kUp, RingSide::kDown}) {
    const int neighbor_ring = p.ring + (rs == RingSide::kUp ? 1 : -1);
    if (neighbor_ring < 0 || neighbor_ring >= intrinsics.ring_count) continue;
    for (ColumnSide cs : {ColumnSide::kLeft, ColumnSide::kRight}) {
      const auto d = beam_distance(p.normal, neighbor_diagonal(p, intrinsics, rs, cs));
      if (!d) return std::nullopt;
      best = std::max(best, *d);
    }
  }
  return best;
}

CorrespondenceSet gcr_reject(const CorrespondenceSet& ms, const FeatureCloud& source,
                             const LidarIntrinsics& intrinsics) {
  CorrespondenceSet out;
  out.matches.reserve(ms.size());
  for (const auto& m : ms.matches) {
    const auto threshold = gcr_threshold(source.points.at(m.source_index), intrinsics);
    if (!threshold || m.distance < *threshold) out.matches.push_back(m);
  }
  return out;
}

}  // namespace beamtrim
