#include "beamtrim/odometry.hpp"

#include <chrono>
#include <stdexcept>

#include "beamtrim/errors.hpp"

namespace beamtrim {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kBaseline:
      return "bl";
    case Variant::kNcf:
      return "ncf";
    case Variant::kSalo:
      return "salo";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  if (name == "bl") return Variant::kBaseline;
  if (name == "ncf") return Variant::kNcf;
  if (name == "salo") return Variant::kSalo;
  throw ConfigError("unknown variant '" + std::string(name) + "' (expected bl, ncf or salo)");
}

OdometryConfig variant_config(Variant v, OdometryConfig base) {
  switch (v) {
    case Variant::kBaseline:
      base.filter.ncf_enabled = false;
      base.icp.rejector = Rejector::kDistance;
      break;
    case Variant::kNcf:
      base.filter.ncf_enabled = true;
      base.icp.rejector = Rejector::kDistance;
      break;
    case Variant::kSalo:
      base.filter.ncf_enabled = true;
      base.icp.rejector = Rejector::kGeometricTrim;
      break;
  }
  return base;
}

OdometryRunner::OdometryRunner(OdometryConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.filter.validate();
  cfg_.icp.validate();
}

const FrameLog& OdometryRunner::process(const RawScan& scan) {
  const auto start = std::chrono::steady_clock::now();
  FrameLog log;
  log.index = trajectory_.size();

  RigidTransform predicted;
  if (!trajectory_.empty()) {
    predicted = trajectory_.poses.back() * extrapolate_init(trajectory_, scan.timestamp);
  }

  std::optional<FeatureCloud> cloud;
  try {
    cloud = filter_points(scan, cfg_.filter);
    log.feature_points = cloud->size();
  } catch (const EmptyOutput& e) {
    log.failure = e.what();
  } catch (const InsufficientPoints& e) {
    log.failure = e.what();
  }

  RigidTransform pose = predicted;
  if (cloud && target_) {
    // The target may be older than the previous frame if a frame was dropped.
    const RigidTransform& target_pose = trajectory_.poses[target_index_];
    RigidTransform init = target_pose.inverse() * predicted;
    int coarse_iterations = 0;
    if (trajectory_.size() < 2 && cfg_.icp.rejector != Rejector::kDistance) {
      // No motion history yet: the identity guess can be off by a whole
      // frame of travel, beyond what the neighbor beam test tolerates.
      IcpConfig coarse = cfg_.icp;
      coarse.rejector = Rejector::kDistance;
      const IcpReport r = icp_align(*target_, *cloud, init, coarse);
      coarse_iterations = r.iterations;
      if (r.reason != TerminationReason::kEmptyMatches && r.reason != TerminationReason::kDegenerateSystem) {
        init = r.final_transform;
      }
    }
    const IcpReport report = icp_align(*target_, *cloud, init, cfg_.icp);
    log.iterations = coarse_iterations + report.iterations;
    log.reason = report.reason;
    if (report.reason == TerminationReason::kEmptyMatches ||
        report.reason == TerminationReason::kDegenerateSystem) {
      log.failure = "registration failed: " + std::string(to_string(report.reason));
    } else {
      pose = target_pose * report.final_transform;
    }
  }

  trajectory_.poses.push_back(pose);
  trajectory_.timestamps.push_back(scan.timestamp);
  if (cloud) {
    target_ = std::move(cloud);
    target_index_ = log.index;
  }
  log.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  frames_.push_back(std::move(log));
  return frames_.back();
}

OdometryResult run_odometry(const std::vector<RawScan>& scans, const OdometryConfig& cfg) {
  if (scans.size() < 2) throw std::invalid_argument("odometry needs at least two scans");
  OdometryRunner runner(cfg);
  for (const auto& scan : scans) runner.process(scan);
  return {runner.trajectory(), runner.frames()};
}

}  // namespace beamtrim
