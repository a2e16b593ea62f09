#include "beamtrim/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "beamtrim/errors.hpp"
#include "beamtrim/parallel.hpp"
#include "beamtrim/rng.hpp"

namespace beamtrim {

namespace {

constexpr double kHitEpsilon = 1e-9;
constexpr double kSensorHeight = 1.8;
constexpr double kFrameInterval = 0.1;  // seconds

PlanarPatch wall_x(double x0, double x1, double y, double z0, double z1, double facing) {
  // Wall parallel to the x axis at lateral offset y; facing = sign of the normal's y.
  PlanarPatch p;
  p.center = {(x0 + x1) / 2.0, y, (z0 + z1) / 2.0};
  p.normal = {0.0, facing, 0.0};
  p.axis_u = Vec3::UnitX();
  p.half_u = (x1 - x0) / 2.0;
  p.half_v = (z1 - z0) / 2.0;
  return p;
}

PlanarPatch wall_y(double y0, double y1, double x, double z0, double z1, double facing) {
  PlanarPatch p;
  p.center = {x, (y0 + y1) / 2.0, (z0 + z1) / 2.0};
  p.normal = {facing, 0.0, 0.0};
  p.axis_u = Vec3::UnitY();
  p.half_u = (y1 - y0) / 2.0;
  p.half_v = (z1 - z0) / 2.0;
  return p;
}

PlanarPatch ground(double half_extent) {
  PlanarPatch p;
  p.center = Vec3::Zero();
  p.normal = Vec3::UnitZ();
  p.axis_u = Vec3::UnitX();
  p.half_u = half_extent;
  p.half_v = half_extent;
  return p;
}

Box box_at(double cx, double cy, double sx, double sy, double sz) {
  return {{cx - sx / 2.0, cy - sy / 2.0, 0.0}, {cx + sx / 2.0, cy + sy / 2.0, sz}};
}

// Straight corridor along +x with doorway alcoves set into both walls at
// irregular spacing, mirrored across y = 0.
Scene corridor_scene() {
  Scene s;
  s.name = "corridor";
  constexpr double kHalfWidth = 4.0;
  constexpr double kAlcoveDepth = 2.0;
  constexpr double kDoorWidth = 2.0;
  constexpr double kHeight = 6.0;
  constexpr double kStart = -30.0;
  constexpr double kEnd = 250.0;
  const std::vector<double> doors = {7, 19, 34, 46, 63, 78, 95, 104, 121, 137, 150, 168, 181, 199, 214, 230};

  s.patches.push_back(ground(300.0));
  for (double side : {1.0, -1.0}) {
    double x = kStart;
    for (double door : doors) {
      const double lo = door - kDoorWidth / 2.0;
      const double hi = door + kDoorWidth / 2.0;
      s.patches.push_back(wall_x(x, lo, side * kHalfWidth, 0.0, kHeight, -side));
      s.patches.push_back(wall_x(lo, hi, side * (kHalfWidth + kAlcoveDepth), 0.0, kHeight, -side));
      const double y0 = kHalfWidth;
      const double y1 = kHalfWidth + kAlcoveDepth;
      s.patches.push_back(wall_y(side > 0 ? y0 : -y1, side > 0 ? y1 : -y0, lo, 0.0, kHeight, 1.0));
      s.patches.push_back(wall_y(side > 0 ? y0 : -y1, side > 0 ? y1 : -y0, hi, 0.0, kHeight, -1.0));
      x = hi;
    }
    s.patches.push_back(wall_x(x, kEnd, side * kHalfWidth, 0.0, kHeight, -side));
  }
  s.patches.push_back(wall_y(-kHalfWidth, kHalfWidth, kStart, 0.0, kHeight, 1.0));
  s.patches.push_back(wall_y(-kHalfWidth, kHalfWidth, kEnd, 0.0, kHeight, -1.0));
  return s;
}

constexpr double kRoomEdgeYaw = 20.0 * std::numbers::pi / 180.0;
constexpr double kRoomEdgeDistance = 20.0;

Scene room_edge_scene() {
  Scene s;
  s.name = "room-edge";
  const Mat3 r = rotation_exp(Vec3::UnitZ() * kRoomEdgeYaw);
  PlanarPatch a = wall_y(-kRoomEdgeDistance, kRoomEdgeDistance, kRoomEdgeDistance, -20.0, 20.0, -1.0);
  PlanarPatch b = wall_x(-kRoomEdgeDistance, kRoomEdgeDistance, kRoomEdgeDistance, -20.0, 20.0, -1.0);
  for (PlanarPatch* p : {&a, &b}) {
    p->center = r * p->center;
    p->normal = r * p->normal;
    p->axis_u = r * p->axis_u;
    s.patches.push_back(*p);
  }
  return s;
}

// Street along x: ground, facades with varying setback, a cross street at
// x in [5, 20], parked cars, poles and buildings closing both ends.
Scene street_scene() {
  Scene s;
  s.name = "street";
  constexpr double kHeight = 12.0;
  s.patches.push_back(ground(200.0));

  struct Segment {
    double x0, x1, y;
  };
  const std::vector<Segment> left = {{-80, -45, 11}, {-45, -20, 9.5}, {-20, 5, 12},
                                     {20, 48, 10},   {48, 62, 13},    {62, 100, 10.5}};
  const std::vector<Segment> right = {{-80, -50, -10}, {-50, -30, -12.5}, {-30, 5, -9.5},
                                      {20, 35, -11},   {35, 70, -10},     {70, 100, -12}};
  for (const auto* side : {&left, &right}) {
    for (std::size_t i = 0; i < side->size(); ++i) {
      const Segment& seg = (*side)[i];
      const double facing = seg.y > 0 ? -1.0 : 1.0;
      s.patches.push_back(wall_x(seg.x0, seg.x1, seg.y, 0.0, kHeight, facing));
      if (i + 1 < side->size() && (*side)[i + 1].x0 == seg.x1) {
        // Step between setbacks, facing the street-side neighbor.
        const Segment& next = (*side)[i + 1];
        const double y0 = std::min(std::abs(seg.y), std::abs(next.y));
        const double y1 = std::max(std::abs(seg.y), std::abs(next.y));
        const double sign = seg.y > 0 ? 1.0 : -1.0;
        const double step_facing = std::abs(seg.y) > std::abs(next.y) ? -1.0 : 1.0;
        s.patches.push_back(wall_y(sign > 0 ? y0 : -y1, sign > 0 ? y1 : -y0, seg.x1, 0.0, kHeight,
                                   step_facing));
      }
    }
  }
  // Building corners along the cross street.
  s.patches.push_back(wall_y(12.0, 60.0, 5.0, 0.0, kHeight, 1.0));
  s.patches.push_back(wall_y(10.0, 60.0, 20.0, 0.0, kHeight, -1.0));
  s.patches.push_back(wall_y(-60.0, -9.5, 5.0, 0.0, kHeight, 1.0));
  s.patches.push_back(wall_y(-60.0, -11.0, 20.0, 0.0, kHeight, -1.0));
  // Buildings closing the street.
  s.patches.push_back(wall_y(-40.0, 40.0, 110.0, 0.0, kHeight, -1.0));
  s.patches.push_back(wall_y(-40.0, 40.0, -90.0, 0.0, kHeight, 1.0));

  for (double x : {-66.0, -33.0, -26.0, 27.5, 41.0, 58.0, 77.0, 92.0}) s.boxes.push_back(box_at(x, 6.2, 4.4, 1.8, 1.5));
  for (double x : {-71.0, -40.0, -18.0, -11.0, 31.0, 52.0, 64.0, 88.0}) {
    s.boxes.push_back(box_at(x, -6.0, 4.6, 1.9, 1.6));
  }
  for (double x : {-60.0, -35.0, -5.0, 25.0, 55.0, 85.0}) s.boxes.push_back(box_at(x, 7.8, 0.3, 0.3, 7.0));
  for (double x : {-52.0, -22.0, 0.0, 40.0, 70.0}) s.boxes.push_back(box_at(x, -7.6, 0.3, 0.3, 7.0));
  // Bus shelter and a kiosk.
  s.boxes.push_back(box_at(-12.0, 8.3, 6.0, 1.5, 2.6));
  s.boxes.push_back(box_at(45.0, -8.2, 2.5, 2.5, 3.0));
  return s;
}

}  // namespace

void Scene::validate() const {
  for (const auto& p : patches) {
    if (!p.center.allFinite() || !p.normal.allFinite() || !p.axis_u.allFinite()) {
      throw ConfigError("patch with non-finite geometry");
    }
    if (std::abs(p.normal.norm() - 1.0) > 1e-9 || std::abs(p.axis_u.norm() - 1.0) > 1e-9 ||
        std::abs(p.normal.dot(p.axis_u)) > 1e-9) {
      throw ConfigError("patch normal and axis must be orthonormal");
    }
    if (!(p.half_u > 0.0 && p.half_v > 0.0)) throw ConfigError("patch extent must be positive");
  }
  for (const auto& b : boxes) {
    if (!b.min.allFinite() || !b.max.allFinite()) throw ConfigError("box with non-finite corners");
    if (!((b.max - b.min).minCoeff() > 0.0)) throw ConfigError("box extent must be positive");
  }
}

std::optional<double> intersect(const PlanarPatch& patch, const Vec3& origin, const Vec3& dir) {
  const double denom = patch.normal.dot(dir);
  if (std::abs(denom) < 1e-12) return std::nullopt;
  const double t = patch.normal.dot(patch.center - origin) / denom;
  if (!(t > kHitEpsilon)) return std::nullopt;
  const Vec3 local = origin + t * dir - patch.center;
  if (std::abs(local.dot(patch.axis_u)) > patch.half_u) return std::nullopt;
  if (std::abs(local.dot(patch.axis_v())) > patch.half_v) return std::nullopt;
  return t;
}

std::optional<double> intersect(const Box& box, const Vec3& origin, const Vec3& dir) {
  double t_enter = -std::numeric_limits<double>::infinity();
  double t_exit = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (dir[a] == 0.0) {
      if (origin[a] < box.min[a] || origin[a] > box.max[a]) return std::nullopt;
      continue;
    }
    double t0 = (box.min[a] - origin[a]) / dir[a];
    double t1 = (box.max[a] - origin[a]) / dir[a];
    if (t0 > t1) std::swap(t0, t1);
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
  }
  if (t_exit < t_enter) return std::nullopt;
  if (t_enter > kHitEpsilon) return t_enter;
  if (t_exit > kHitEpsilon) return t_exit;  // origin inside the box
  return std::nullopt;
}

std::optional<double> cast_ray(const Scene& scene, const Vec3& origin, const Vec3& dir) {
  std::optional<double> best;
  for (const auto& p : scene.patches) {
    const auto t = intersect(p, origin, dir);
    if (t && (!best || *t < *best)) best = t;
  }
  for (const auto& b : scene.boxes) {
    const auto t = intersect(b, origin, dir);
    if (t && (!best || *t < *best)) best = t;
  }
  return best;
}

Vec3 beam_direction(double elevation, double azimuth) {
  const double c = std::cos(elevation);
  return {c * std::cos(azimuth), c * std::sin(azimuth), std::sin(elevation)};
}

RawScan simulate_scan(const Scene& scene, const RigidTransform& sensor_pose, const LidarIntrinsics& intrinsics,
                      std::uint64_t noise_seed, double timestamp) {
  intrinsics.validate();
  const auto elevations = intrinsics.ring_elevations();
  const int columns = intrinsics.column_count();
  const Mat3& rot = sensor_pose.rotation();
  const Vec3& origin = sensor_pose.translation();

  std::vector<std::vector<ScanPoint>> per_ring(elevations.size());
  parallel_for(elevations.size(), [&](std::size_t ring) {
    auto& out = per_ring[ring];
    for (int col = 0; col < columns; ++col) {
      const Vec3 local = beam_direction(elevations[ring], col * intrinsics.azimuth_increment);
      const auto hit = cast_ray(scene, origin, rot * local);
      if (!hit || *hit < kMinRange || *hit > kMaxRange) continue;
      double range = *hit;
      if (intrinsics.range_noise_std > 0.0) {
        CounterRng rng(noise_seed, (static_cast<std::uint64_t>(ring) << 32) | static_cast<std::uint32_t>(col));
        range += intrinsics.range_noise_std * rng.normal();
      }
      if (range < kMinRange) continue;
      out.emplace_back(local * range, static_cast<int>(ring), col);
    }
  });

  RawScan scan;
  scan.timestamp = timestamp;
  scan.intrinsics = intrinsics;
  for (auto& ring : per_ring) scan.points.insert(scan.points.end(), ring.begin(), ring.end());
  return scan;
}

RigidTransform sample_perturbation(const PerturbationSpec& spec) {
  CounterRng rng(spec.seed, 0);
  const Vec3 rot_axis = rng.unit_vector();
  const Vec3 trans_axis = rng.unit_vector();
  const double angle = rng.uniform(-spec.max_rotation, spec.max_rotation);
  const double dist = rng.uniform(-spec.max_translation, spec.max_translation);
  return {rotation_exp(rot_axis * angle), trans_axis * dist};
}

std::vector<std::string> standard_scene_names() { return {"corridor", "room-edge", "street"}; }

Scene standard_scene(std::string_view name) {
  if (name == "corridor") return corridor_scene();
  if (name == "room-edge") return room_edge_scene();
  if (name == "street") return street_scene();
  throw ConfigError("unknown scene '" + std::string(name) + "'");
}

EdgeLine room_edge_line() {
  const Mat3 r = rotation_exp(Vec3::UnitZ() * kRoomEdgeYaw);
  return {r * Vec3(kRoomEdgeDistance, kRoomEdgeDistance, 0.0), Vec3::UnitZ()};
}

Trajectory standard_drive(std::string_view scene_name, std::size_t frames) {
  Trajectory traj;
  double x = 0.0;
  for (std::size_t i = 0; i < frames; ++i) {
    const double t = static_cast<double>(i) * kFrameInterval;
    Vec3 pos;
    double yaw = 0.0;
    if (scene_name == "corridor") {
      // Cruising at about 22 m/s, accelerating at 2 m/s^2, weaving gently between the walls.
      if (i > 0) x += 2.2 + 0.02 * static_cast<double>(i);
      const double k = 2.0 * std::numbers::pi / 70.0;
      pos = {x, 0.6 * std::sin(k * x), kSensorHeight};
      yaw = std::atan(0.6 * k * std::cos(k * x));
    } else if (scene_name == "street") {
      x = -40.0 + 1.2 * static_cast<double>(i);
      pos = {x, 0.8 * std::sin(0.05 * x), kSensorHeight};
      yaw = 0.04 * std::cos(0.05 * x);
    } else if (scene_name == "room-edge") {
      pos = {0.05 * static_cast<double>(i), 0.0, 0.0};
    } else {
      throw ConfigError("unknown scene '" + std::string(scene_name) + "'");
    }
    traj.poses.emplace_back(rotation_exp(Vec3::UnitZ() * yaw), pos);
    traj.timestamps.push_back(t);
  }
  return traj;
}

std::string serialize_scene(const Scene& scene) {
  std::ostringstream os;
  os.precision(17);
  if (!scene.name.empty()) os << "name " << scene.name << '\n';
  for (const auto& p : scene.patches) {
    os << "patch " << p.center.x() << ' ' << p.center.y() << ' ' << p.center.z() << ' ' << p.normal.x() << ' '
       << p.normal.y() << ' ' << p.normal.z() << ' ' << p.axis_u.x() << ' ' << p.axis_u.y() << ' '
       << p.axis_u.z() << ' ' << p.half_u << ' ' << p.half_v << '\n';
  }
  for (const auto& b : scene.boxes) {
    os << "box " << b.min.x() << ' ' << b.min.y() << ' ' << b.min.z() << ' ' << b.max.x() << ' ' << b.max.y()
       << ' ' << b.max.z() << '\n';
  }
  return os.str();
}

Scene parse_scene(std::string_view text) {
  Scene scene;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "name") {
      std::getline(ls >> std::ws, scene.name);
      continue;
    }
    std::vector<double> v;
    std::string tok;
    while (ls >> tok) {
      char* end = nullptr;
      const double d = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') throw ParseError(line_no, "not a number: '" + tok + "'");
      v.push_back(d);
    }
    if (kind == "patch") {
      if (v.size() != 11) throw ParseError(line_no, "patch needs 11 values");
      PlanarPatch p;
      p.center = {v[0], v[1], v[2]};
      p.normal = Vec3(v[3], v[4], v[5]).normalized();
      p.axis_u = Vec3(v[6], v[7], v[8]).normalized();
      p.half_u = v[9];
      p.half_v = v[10];
      scene.patches.push_back(p);
    } else if (kind == "box") {
      if (v.size() != 6) throw ParseError(line_no, "box needs 6 values");
      scene.boxes.push_back({{v[0], v[1], v[2]}, {v[3], v[4], v[5]}});
    } else {
      throw ParseError(line_no, "unknown primitive '" + kind + "'");
    }
  }
  try {
    scene.validate();
  } catch (const ConfigError& e) {
    throw ParseError(line_no, e.what());
  }
  return scene;
}

}  // namespace beamtrim
