#include "beamtrim/scan.hpp"

#include <cmath>
#include <numbers>

#include "beamtrim/errors.hpp"

namespace beamtrim {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

void LidarIntrinsics::validate() const {
  if (!(azimuth_increment > 0.0)) throw ConfigError("azimuth increment must be positive");
  if (ring_count < 2) throw ConfigError("at least two rings are required");
  if (ring_pitch.size() != static_cast<std::size_t>(ring_count - 1)) {
    throw ConfigError("ring pitch table must have ring_count - 1 entries");
  }
  for (double p : ring_pitch) {
    if (!(p > 0.0)) throw ConfigError("ring pitches must be positive");
  }
  if (!(range_noise_std >= 0.0)) throw ConfigError("range noise must be non-negative");
}

std::vector<double> LidarIntrinsics::ring_elevations() const {
  std::vector<double> elev(static_cast<std::size_t>(ring_count), 0.0);
  for (int j = 1; j < ring_count; ++j) elev[j] = elev[j - 1] + ring_pitch[j - 1];
  const double mid = (elev.front() + elev.back()) / 2.0;
  for (double& e : elev) e -= mid;
  return elev;
}

int LidarIntrinsics::column_count() const {
  return static_cast<int>(std::floor(2.0 * std::numbers::pi / azimuth_increment + 1e-9));
}

double LidarIntrinsics::pitch_to(int ring, int direction) const {
  return direction > 0 ? ring_pitch.at(static_cast<std::size_t>(ring))
                       : ring_pitch.at(static_cast<std::size_t>(ring - 1));
}

LidarIntrinsics default_intrinsics() {
  LidarIntrinsics in;
  in.azimuth_increment = 0.08 * kDeg;
  in.ring_count = 32;
  in.ring_pitch.assign(31, 0.26 * kDeg);
  in.range_noise_std = 0.02;
  return in;
}

std::vector<Vec3> RawScan::positions() const {
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.position);
  return out;
}

void RawScan::validate() const {
  for (const auto& p : points) {
    if (!p.position.allFinite()) throw Error("scan contains non-finite coordinates");
    if (std::abs(p.range - p.position.norm()) > 1e-6) throw Error("scan point range mismatch");
    if (p.ring < 0 || p.ring >= intrinsics.ring_count) throw Error("scan point ring out of range");
  }
}

std::vector<Vec3> FeatureCloud::positions() const {
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.position);
  return out;
}

}  // namespace beamtrim
