#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "beamtrim/scan.hpp"
#include "beamtrim/trajectory.hpp"

namespace beamtrim {

/// Velodyne .bin: little-endian float32 quadruples (x, y, z, reflectance).
/// Reflectance is discarded; ring and column are recovered from the beam
/// angles (nearest ring elevation, nearest azimuth step). Returns closer than
/// kMinRange are dropped. Throws MalformedFile or EmptyScan.
RawScan read_velodyne_bin(const std::filesystem::path& path, const LidarIntrinsics& intrinsics,
                          double timestamp = 0.0);
/// Reflectance is written as 0.
void write_velodyne_bin(const std::filesystem::path& path, const RawScan& scan);

/// Ring index whose elevation is closest to the elevation of p.
int nearest_ring(const Vec3& p, const std::vector<double>& elevations);

/// One pose per line, 12 values of the row-major 3x4 [R | t], 17 significant digits.
std::string format_pose(const RigidTransform& pose);
void write_poses(const std::filesystem::path& path, const Trajectory& traj);
/// Rotations that drift from orthonormal by more than 1e-6 are
/// re-orthonormalized. Throws ParseError with the line number.
Trajectory read_poses(const std::filesystem::path& path);

/// One timestamp (seconds) per line.
std::vector<double> read_timestamps(const std::filesystem::path& path);
void write_timestamps(const std::filesystem::path& path, const std::vector<double>& stamps);

}  // namespace beamtrim
