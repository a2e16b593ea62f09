#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beamtrim/filtering.hpp"
#include "beamtrim/registration.hpp"
#include "beamtrim/scan.hpp"
#include "beamtrim/trajectory.hpp"

namespace beamtrim {

/// Method variants: BL (distance rejector), NCF (BL with normal covariance
/// filtering) and SALO (NCF with the neighbor beam rejector and trimming).
enum class Variant { kBaseline, kNcf, kSalo };

std::string_view to_string(Variant v);
/// Accepts "bl", "ncf" and "salo".
Variant parse_variant(std::string_view name);

struct OdometryConfig {
  FilterConfig filter;
  IcpConfig icp;
};

/// `base` with the filter and rejector switches of the variant applied.
OdometryConfig variant_config(Variant v, OdometryConfig base = {});

struct FrameLog {
  std::size_t index = 0;
  double seconds = 0.0;
  std::size_t feature_points = 0;
  int iterations = 0;
  std::optional<TerminationReason> reason;
  /// Set when the frame fell back to the extrapolated pose.
  std::string failure;
};

/// Frame-by-frame odometry. Each scan is filtered once; the previous filtered
/// cloud is kept as the registration target. The first registration has no
/// motion history, so it is preceded by a coarse pass with the distance
/// rejector whenever another rejector is configured.
class OdometryRunner {
 public:
  explicit OdometryRunner(OdometryConfig cfg);

  const FrameLog& process(const RawScan& scan);

  const Trajectory& trajectory() const { return trajectory_; }
  const std::vector<FrameLog>& frames() const { return frames_; }

 private:
  OdometryConfig cfg_;
  Trajectory trajectory_;
  std::vector<FrameLog> frames_;
  std::optional<FeatureCloud> target_;
  std::size_t target_index_ = 0;
};

struct OdometryResult {
  Trajectory trajectory;
  std::vector<FrameLog> frames;
};

/// pose[0] is the identity; pose[i] = pose[i-1] * T_i^{i-1}. Needs at least two scans.
OdometryResult run_odometry(const std::vector<RawScan>& scans, const OdometryConfig& cfg);

}  // namespace beamtrim
