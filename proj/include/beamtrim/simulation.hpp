#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beamtrim/geometry.hpp"
#include "beamtrim/scan.hpp"
#include "beamtrim/trajectory.hpp"

namespace beamtrim {

inline constexpr double kMaxRange = 120.0;

/// Rectangle centered at `center` spanning +-half_u along axis_u and +-half_v
/// along normal x axis_u. Infinite half extents give an unbounded plane.
struct PlanarPatch {
  Vec3 center = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  Vec3 axis_u = Vec3::UnitX();
  double half_u = std::numeric_limits<double>::infinity();
  double half_v = std::numeric_limits<double>::infinity();

  Vec3 axis_v() const { return normal.cross(axis_u); }
};

struct Box {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();
};

struct Scene {
  std::string name;
  std::vector<PlanarPatch> patches;
  std::vector<Box> boxes;

  /// Throws ConfigError for non-finite or degenerate primitives.
  void validate() const;
};

/// Nearest hit distance t > 0 along origin + t * dir (dir unit).
std::optional<double> intersect(const PlanarPatch& patch, const Vec3& origin, const Vec3& dir);
std::optional<double> intersect(const Box& box, const Vec3& origin, const Vec3& dir);
std::optional<double> cast_ray(const Scene& scene, const Vec3& origin, const Vec3& dir);

/// Unit beam direction in the sensor frame for a ring elevation and azimuth.
Vec3 beam_direction(double elevation, double azimuth);

/// Spins the lidar at `sensor_pose` (world from sensor). Every ring/column ray
/// takes the nearest hit; hits within [kMinRange, kMaxRange] become points
/// with Gaussian range noise of std intrinsics.range_noise_std, drawn from a
/// stream keyed by (seed, ring, column).
RawScan simulate_scan(const Scene& scene, const RigidTransform& sensor_pose, const LidarIntrinsics& intrinsics,
                      std::uint64_t noise_seed, double timestamp = 0.0);

struct PerturbationSpec {
  double max_rotation = 0.0;     // l_r, radians
  double max_translation = 0.0;  // l_t, meters
  std::uint64_t seed = 0;
};

/// Random rotation about a uniform axis by U[-l_r, l_r] and translation along
/// an independent uniform axis by U[-l_t, l_t].
RigidTransform sample_perturbation(const PerturbationSpec& spec);

/// "corridor", "room-edge" and "street".
std::vector<std::string> standard_scene_names();
/// Throws ConfigError for unknown names.
Scene standard_scene(std::string_view name);

/// Sensor poses of a drive through a standard scene; `frames` poses, 10 Hz.
Trajectory standard_drive(std::string_view scene_name, std::size_t frames);

/// Room-edge geometry: the vertical line where the two walls meet.
struct EdgeLine {
  Vec3 point;
  Vec3 direction;
};
EdgeLine room_edge_line();

/// One primitive per line:
///   patch cx cy cz nx ny nz ux uy uz half_u half_v
///   box minx miny minz maxx maxy maxz
/// `name <text>` sets the scene name; '#' starts a comment; "inf" is accepted.
std::string serialize_scene(const Scene& scene);
/// Throws ParseError with the offending line number.
Scene parse_scene(std::string_view text);

}  // namespace beamtrim
