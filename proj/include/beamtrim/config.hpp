#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "beamtrim/odometry.hpp"
#include "beamtrim/scan.hpp"

namespace beamtrim {

struct Config {
  LidarIntrinsics intrinsics = default_intrinsics();
  OdometryConfig odometry;
};

/// Flat `key = value` text with '#' comments. Keys:
///   filter:     voxel_size k c_tau curvature_max xi ncf
///   icp:        max_iterations abs_trans_eps abs_rot_eps rel_eps rejector
///               trim_fraction max_distance damping
///   intrinsics: azimuth_increment ring_count ring_pitch range_noise_std
/// ring_pitch takes one value (uniform) or a comma-separated table; angles in
/// radians. Unknown keys and malformed values raise ParseError.
Config parse_config(std::string_view text, Config base = {});
Config load_config(const std::filesystem::path& path, Config base = {});

/// Applies a single key; throws ConfigError for unknown keys or bad values.
void apply_config_value(Config& cfg, std::string_view key, std::string_view value);

std::string format_config(const Config& cfg);

}  // namespace beamtrim
