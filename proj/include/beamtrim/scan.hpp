#pragma once

#include <cstddef>
#include <vector>

#include "beamtrim/geometry.hpp"

namespace beamtrim {

/// Returns closer than this are treated as self-hits and dropped at ingest.
inline constexpr double kMinRange = 0.5;

/// Calibration of a spinning multi-beam lidar. Ring 0 is the lowest beam;
/// ring_pitch[j] is the angular pitch distance between rings j and j+1.
struct LidarIntrinsics {
  double azimuth_increment = 0.0;  // radians
  std::vector<double> ring_pitch;  // radians, ring_count - 1 entries
  int ring_count = 0;
  double range_noise_std = 0.0;  // meters

  /// Throws ConfigError if the invariants do not hold.
  void validate() const;

  /// Beam elevations, ascending, centered about the horizontal plane.
  std::vector<double> ring_elevations() const;
  int column_count() const;

  /// Pitch distance between `ring` and its neighbor one ring up (+1) or down (-1).
  double pitch_to(int ring, int direction) const;
};

/// 32 rings, 0.08 deg azimuth step, uniform 0.26 deg ring pitch, 2 cm range noise.
LidarIntrinsics default_intrinsics();

struct ScanPoint {
  Vec3 position = Vec3::Zero();  // sensor frame
  int ring = 0;
  int column = 0;
  double range = 0.0;

  ScanPoint() = default;
  ScanPoint(const Vec3& p, int ring_index, int column_index)
      : position(p), ring(ring_index), column(column_index), range(p.norm()) {}
};

struct RawScan {
  std::vector<ScanPoint> points;
  double timestamp = 0.0;
  LidarIntrinsics intrinsics;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  std::vector<Vec3> positions() const;

  /// Throws Error on NaN coordinates, range mismatch or ring out of bounds.
  void validate() const;
};

struct FeaturePoint {
  Vec3 position = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  double normal_uncertainty = 0.0;
  double curvature = 0.0;
  int ring = 0;
  int column = 0;
  double range = 0.0;
};

struct FeatureCloud {
  std::vector<FeaturePoint> points;
  double timestamp = 0.0;
  LidarIntrinsics intrinsics;
  /// Point count of the raw scan this cloud was filtered from.
  std::size_t source_size = 0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  std::vector<Vec3> positions() const;
};

}  // namespace beamtrim
