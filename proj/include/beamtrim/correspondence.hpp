#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "beamtrim/geometry.hpp"
#include "beamtrim/kdtree.hpp"
#include "beamtrim/scan.hpp"

namespace beamtrim {

struct Correspondence {
  std::size_t source_index = 0;
  std::size_t target_index = 0;
  double distance = 0.0;  // meters
};

struct CorrespondenceSet {
  std::vector<Correspondence> matches;

  std::size_t size() const { return matches.size(); }
  bool empty() const { return matches.empty(); }
};

/// Closest target point for every source point; ties go to the lower target index.
CorrespondenceSet match_nearest(const FeatureCloud& source, const FeatureCloud& target);
/// Same, with source positions already expressed in the target frame.
CorrespondenceSet match_nearest(std::span<const Vec3> source_positions, const KdTree& target);

/// Keeps the ceil((1 - fraction) * n) closest matches in their original order.
CorrespondenceSet trim_matches(const CorrespondenceSet& ms, double fraction = 0.2);

/// Keeps matches strictly closer than max_distance.
CorrespondenceSet distance_reject(const CorrespondenceSet& ms, double max_distance);

enum class RingSide { kUp, kDown };
enum class ColumnSide { kLeft, kRight };

/// True when the beam through p is (numerically) vertical, which leaves the
/// azimuthal axis undefined.
bool is_vertical_beam(const Vec3& p);

/// Offset from p to a hypothetical return of the adjacent beam on the given
/// ring and azimuth side, on the plane orthogonal to the beam:
/// (+-phi u +- theta v) * |p| with u, v unit axes orthogonal to p.
/// Throws VerticalBeam, or std::out_of_range for a missing neighbor ring.
Vec3 neighbor_diagonal(const FeaturePoint& p, const LidarIntrinsics& intrinsics, RingSide ring_side,
                       ColumnSide column_side);

/// |diag|^2 / sqrt(|diag|^2 - <diag, n>^2): the diagonal carried along the
/// beam onto the surface through p with normal n. Throws GrazingIncidence.
double neighbor_beam_distance(const FeaturePoint& p, const Vec3& diag);

/// Largest neighbor beam distance over the available neighbors of p, or
/// nullopt when the test is inconclusive (vertical beam or grazing surface)
/// and the match must be accepted.
std::optional<double> gcr_threshold(const FeaturePoint& p, const LidarIntrinsics& intrinsics);

/// Keeps match k iff its distance is below the largest neighbor beam distance
/// of its source point.
CorrespondenceSet gcr_reject(const CorrespondenceSet& ms, const FeatureCloud& source,
                             const LidarIntrinsics& intrinsics);

}  // namespace beamtrim
