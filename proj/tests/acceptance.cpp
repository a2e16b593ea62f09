// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// gating criterion fails. Set BEAMTRIM_KITTI_ROOT to a KITTI odometry root
// (sequences/00/velodyne, sequences/00/calib.txt, poses/00.txt) to run the
// optional integration check.

#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "beamtrim/bench.hpp"
#include "beamtrim/correspondence.hpp"
#include "beamtrim/errors.hpp"
#include "beamtrim/evaluation.hpp"
#include "beamtrim/filtering.hpp"
#include "beamtrim/io.hpp"
#include "beamtrim/kdtree.hpp"
#include "beamtrim/odometry.hpp"
#include "beamtrim/registration.hpp"
#include "beamtrim/simulation.hpp"

using namespace beamtrim;
namespace fs = std::filesystem;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Outcome {
  enum class Kind { kPass, kFail, kSkip } kind = Kind::kFail;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

Outcome verdict(bool ok, std::string detail) {
  return {ok ? Outcome::Kind::kPass : Outcome::Kind::kFail, std::move(detail)};
}

Vec3 random_unit(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  return Vec3(n(gen), n(gen), n(gen)).normalized();
}

Mat3 random_rotation(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> a(0.0, std::numbers::pi);
  return rotation_exp(random_unit(gen) * a(gen));
}

Vec3 normal_of(const Eigen::MatrixX3d& data, const Vec3& reference) {
  Eigen::JacobiSVD<Eigen::MatrixX3d> svd(data, Eigen::ComputeThinV);
  Vec3 v = svd.matrixV().col(2);
  return v.dot(reference) < 0.0 ? Vec3(-v) : v;
}

// 1. Analytic SVD normal Jacobian against central differences.
Outcome svd_jacobian_oracle() {
  std::mt19937_64 gen(1001);
  std::normal_distribution<double> n(0.0, 1.0);
  constexpr double h = 1e-6;
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int k = 6 + t % 15;
    const Mat3 r = random_rotation(gen);
    const Vec3 center(10.0 * n(gen), 10.0 * n(gen), 10.0 * n(gen));
    std::vector<Vec3> pts;
    for (int i = 0; i < k; ++i) pts.push_back(center + r * Vec3(1.0 * n(gen), 0.5 * n(gen), 0.1 * n(gen)));
    const Neighborhood nb = make_neighborhood(center, pts);
    const SvdResult svd = decompose(nb.data);
    const Vec3 v2 = svd.V.col(2);
    double diff2 = 0.0, norm2 = 0.0;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < 3; ++j) {
        Eigen::MatrixX3d plus = nb.data, minus = nb.data;
        plus(i, j) += h;
        minus(i, j) -= h;
        const Vec3 fd = (normal_of(plus, v2) - normal_of(minus, v2)) / (2.0 * h);
        const Vec3 analytic = svd_jacobian_entry(svd, i, j);
        diff2 += (fd - analytic).squaredNorm();
        norm2 += analytic.squaredNorm();
      }
    }
    worst = std::max(worst, std::sqrt(diff2 / norm2));
  }
  return verdict(worst < 1e-4, fmt("max relative error %.2e over 500 neighborhoods (k 6..20)", worst));
}

// 2. Propagated normal covariance against Monte Carlo.
std::vector<std::vector<Vec3>> covariance_fixtures() {
  std::mt19937_64 gen(1002);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<std::vector<Vec3>> out(5);
  for (int i = 0; i < 12; ++i) out[0].emplace_back(u(gen), 0.6 * u(gen), 0.05 * u(gen));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) out[1].emplace_back(0.25 * a, 0.25 * b, 0.01 * u(gen));
  }
  for (int i = 0; i < 8; ++i) out[2].emplace_back(4.0 * u(gen), 0.4 * u(gen), 0.02 * u(gen));
  for (int i = 0; i < 20; ++i) {
    const double x = u(gen), y = u(gen);
    out[3].emplace_back(x, y, 0.2 * (x * x - y * y));
  }
  // Shallow dihedral: two faces meeting at 150 degrees.
  for (int i = 0; i < 10; ++i) {
    const double s = 0.5 + u(gen), y = u(gen);
    const double c = std::cos(15 * kDeg), sn = std::sin(15 * kDeg);
    out[4].push_back(i % 2 ? Vec3(s * c, y, s * sn) : Vec3(-s * c, y, s * sn));
  }
  for (auto& pts : out) {
    const Mat3 r = random_rotation(gen);
    for (auto& p : pts) p = r * p;
  }
  return out;
}

Outcome covariance_oracle() {
  constexpr double sigma = 1e-3;
  constexpr int kDraws = 100000;
  std::mt19937_64 gen(1003);
  std::normal_distribution<double> noise(0.0, sigma);
  double worst = 0.0;
  for (const auto& base : covariance_fixtures()) {
    const Vec3 center(0.0, 0.0, 10.0);
    const Neighborhood nb = make_neighborhood(center, base);
    const SvdResult svd = decompose(nb.data);
    const Mat3 predicted = normal_covariance(svd, sigma);
    const Vec3 nominal = svd.V.col(2);
    Vec3 mean = Vec3::Zero();
    Mat3 second = Mat3::Zero();
    Eigen::MatrixX3d data = nb.data;
    for (int d = 0; d < kDraws; ++d) {
      for (int i = 0; i < data.rows(); ++i) {
        for (int j = 0; j < 3; ++j) data(i, j) = nb.data(i, j) + noise(gen);
      }
      // Centering is part of the estimator, so redo it per draw.
      data.rowwise() -= data.colwise().mean();
      const Vec3 n = normal_of(data, nominal);
      mean += n;
      second += n * n.transpose();
    }
    mean /= kDraws;
    const Mat3 sample = second / kDraws - mean * mean.transpose();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double scale = std::sqrt(predicted(i, i) * predicted(j, j));
        worst = std::max(worst, std::abs(sample(i, j) - predicted(i, j)) / scale);
      }
    }
  }
  return verdict(worst < 0.15, fmt("max entrywise deviation %.3f of sqrt(C_ii C_jj) over 5 fixtures, 1e5 draws",
                                   worst));
}

// 3. NCF selectivity on the room edge.
Outcome ncf_selectivity() {
  const FilterConfig fc;
  LidarIntrinsics in = default_intrinsics();
  in.range_noise_std = 0.02;
  const Scene scene = standard_scene("room-edge");
  const EdgeLine edge = room_edge_line();
  const Mat3 room = rotation_exp(Vec3::UnitZ() * (20.0 * kDeg));
  const Trajectory drive = standard_drive("room-edge", 5);
  const double margin = 2.0 * fc.voxel_size;
  const double top = in.ring_elevations().back();
  std::vector<double> edge_u, interior_u;
  for (std::size_t f = 0; f < drive.size(); ++f) {
    const RawScan vox = voxel_grid(simulate_scan(scene, drive.poses[f], in, 3 + f), fc.voxel_size);
    const auto an = analyze_points(vox, fc);
    for (std::size_t i = 0; i < an.size(); ++i) {
      const Vec3 local = vox.points[i].position;
      const Vec3 w = drive.poses[f] * local;
      const Vec3 d = w - edge.point;
      const double dist = (d - d.dot(edge.direction) * edge.direction).norm();
      const double u = an[i].status == PointAnalysis::Status::kOk ? an[i].uncertainty
                                                                   : std::numeric_limits<double>::infinity();
      if (dist < 2.0 * fc.voxel_size) {
        edge_u.push_back(u);
        continue;
      }
      // Interior: away from the edge and from the wall and scan borders.
      const double fov = local.head<2>().norm() * std::tan(top) - std::abs(local.z());
      const Vec3 lw = room.transpose() * w;
      const double far = std::min(20.0 + lw.x(), 20.0 + lw.y());
      if (dist > margin && fov > margin && far > margin) interior_u.push_back(u);
    }
  }
  std::vector<double> sorted = interior_u;
  std::sort(sorted.begin(), sorted.end());
  const double c_tau = sorted[static_cast<std::size_t>(0.99 * (sorted.size() - 1))];
  auto rejected = [&](const std::vector<double>& v) {
    return static_cast<double>(std::count_if(v.begin(), v.end(), [&](double u) { return u >= c_tau; })) /
           static_cast<double>(v.size());
  };
  const double er = rejected(edge_u), ir = rejected(interior_u);
  return verdict(er >= 0.8 && ir <= 0.05,
                 fmt("edge rejected %.3f (n=%zu), interior rejected %.3f (n=%zu), cTau %.3e", er, edge_u.size(), ir,
                     interior_u.size(), c_tau));
}

// 4. GCR correctness.
FeaturePoint feature_at(const Vec3& p, const Vec3& n, int ring) {
  FeaturePoint f;
  f.position = p;
  f.normal = n;
  f.ring = ring;
  f.range = p.norm();
  return f;
}

std::optional<double> threshold_from_diagonals(const FeaturePoint& p, const LidarIntrinsics& in) {
  if (is_vertical_beam(p.position)) return std::nullopt;
  std::optional<double> best;
  for (RingSide r : {RingSide::kUp, RingSide::kDown}) {
    for (ColumnSide c : {ColumnSide::kLeft, ColumnSide::kRight}) {
      Vec3 diag;
      try {
        diag = neighbor_diagonal(p, in, r, c);
      } catch (const std::out_of_range&) {
        continue;
      }
      try {
        const double d = neighbor_beam_distance(p, diag);
        best = std::max(best.value_or(0.0), d);
      } catch (const GrazingIncidence&) {
        return std::nullopt;
      }
    }
  }
  return best;
}

std::string gcr_exhaustive(bool& ok) {
  const Scene scene = standard_scene("street");
  const Trajectory drive = standard_drive("street", 50);
  const LidarIntrinsics in = default_intrinsics();
  std::size_t checked = 0, kept = 0, violations = 0;
  for (std::size_t f = 0; f + 1 < 50; f += 7) {
    const FeatureCloud target = filter_points(simulate_scan(scene, drive.poses[f], in, 400 + f), {});
    const FeatureCloud source = filter_points(simulate_scan(scene, drive.poses[f + 1], in, 500 + f), {});
    const RigidTransform init = sample_perturbation({5 * kDeg, 0.5, 600 + f}) * (drive.poses[f].inverse() *
                                                                                drive.poses[f + 1]);
    std::vector<Vec3> moved;
    for (const auto& p : source.points) moved.push_back(init * p.position);
    const KdTree tree(target.positions());
    const CorrespondenceSet all = match_nearest(moved, tree);
    const CorrespondenceSet out = gcr_reject(all, source, in);
    std::vector<char> is_kept(source.size(), 0);
    for (const auto& m : out.matches) is_kept[m.source_index] = 1;
    for (const auto& m : all.matches) {
      const auto thr = threshold_from_diagonals(source.points[m.source_index], in);
      const bool should_keep = !thr || m.distance < *thr;
      violations += should_keep != static_cast<bool>(is_kept[m.source_index]);
      ++checked;
    }
    kept += out.size();
  }
  ok = violations == 0 && checked > 0;
  return fmt("exhaustive: %zu/%zu matches disagree with the threshold (%zu kept)", violations, checked, kept);
}

std::string gcr_lower_bound(bool& ok) {
  std::mt19937_64 gen(1004);
  const LidarIntrinsics in = default_intrinsics();
  std::uniform_real_distribution<double> range(1.0, 100.0);
  std::uniform_int_distribution<int> ring(0, in.ring_count - 1), side(0, 1);
  const auto elev = in.ring_elevations();
  std::size_t evaluated = 0, grazing = 0, below = 0;
  while (evaluated < 1000000) {
    const int j = ring(gen);
    const double az = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(gen);
    const Vec3 p = range(gen) * beam_direction(elev[j], az);
    Vec3 n = random_unit(gen);
    if (n.dot(p) > 0) n = -n;
    const FeaturePoint f = feature_at(p, n, j);
    const RingSide rs = (j == 0 || (j + 1 < in.ring_count && side(gen))) ? RingSide::kUp : RingSide::kDown;
    const Vec3 diag = neighbor_diagonal(f, in, rs, side(gen) ? ColumnSide::kLeft : ColumnSide::kRight);
    try {
      below += neighbor_beam_distance(f, diag) < diag.norm();
      ++evaluated;
    } catch (const GrazingIncidence&) {
      ++grazing;
    }
  }
  ok = below == 0;
  return fmt("d >= |diag|: %zu violations in %zu evaluations (%zu grazing skipped)", below, evaluated, grazing);
}

std::string gcr_ray_cast(bool& ok) {
  const LidarIntrinsics in = default_intrinsics();
  const auto elev = in.ring_elevations();
  const double phi = in.azimuth_increment;
  double worst = 0.0, first_over = -1.0, worst_vertical = 0.0, first_vertical = -1.0;
  for (double inc = 0.0; inc < 60.0 - 1e-9; inc += 0.5) {
    double worst_here = 0.0, vertical_here = 0.0;
    for (int ring : {3, 16, 28}) {
      for (double range : {5.0, 20.0, 60.0}) {
        const double az = 0.3;
        const Vec3 p = range * beam_direction(elev[ring], az);
        const Vec3 beam = p.normalized();
        const Vec3 up = (Vec3::UnitZ() - Vec3::UnitZ().dot(beam) * beam).normalized();
        const Vec3 side = beam.cross(up);
        for (double psi = 0.0; psi < 180.0; psi += 15.0) {
          const Vec3 tilt_dir = std::cos(psi * kDeg) * up + std::sin(psi * kDeg) * side;
          const Vec3 n = -std::cos(inc * kDeg) * beam + std::sin(inc * kDeg) * tilt_dir;
          const auto thr = gcr_threshold(feature_at(p, n, ring), in);
          if (!thr) continue;
          PlanarPatch plane;
          plane.center = p;
          plane.normal = n;
          plane.axis_u = n.unitOrthogonal();
          double cast = 0.0;
          for (int dj : {-1, 1}) {
            for (double da : {-phi, phi}) {
              const Vec3 dir = beam_direction(elev[ring + dj], az + da);
              const auto t = intersect(plane, Vec3::Zero(), dir);
              if (t) cast = std::max(cast, (*t * dir - p).norm());
            }
          }
          const double err = std::abs(*thr - cast) / cast;
          worst_here = std::max(worst_here, err);
          if (psi == 0.0) vertical_here = std::max(vertical_here, err);
        }
      }
    }
    if (worst_here >= 0.05 && first_over < 0) first_over = inc;
    if (vertical_here >= 0.05 && first_vertical < 0) first_vertical = inc;
    worst = std::max(worst, worst_here);
    worst_vertical = std::max(worst_vertical, vertical_here);
  }
  ok = worst < 0.05;
  std::string s = fmt("ray-cast: max error %.1f%% for incidence < 60 deg over tilt directions", 100.0 * worst);
  if (first_over >= 0) s += fmt(", first >= 5%% at %.1f deg", first_over);
  s += fmt(" (vertical tilt only: max %.1f%%", 100.0 * worst_vertical);
  s += first_vertical >= 0 ? fmt(", first >= 5%% at %.1f deg)", first_vertical) : std::string(")");
  return s;
}

Outcome gcr_correctness() {
  bool a = false, b = false, c = false;
  const std::string da = gcr_exhaustive(a), db = gcr_lower_bound(b), dc = gcr_ray_cast(c);
  return verdict(a && b && c, da + "; " + db + "; " + dc);
}

// 5. Rejector comparison on simulated street pairs.
Outcome rejector_comparison() {
  const BenchReport rep = bench_rejectors(BenchSpec{});
  bool ok = true;
  std::string s;
  for (const auto& lvl : rep.levels) {
    ok = ok && lvl.geom.median <= lvl.dst.median;
    s += fmt("%s(%.1f m, %.0f deg) geom %.4f dst %.4f", s.empty() ? "" : "; ", lvl.level.translation,
             lvl.level.rotation / kDeg, lvl.geom.median, lvl.dst.median);
  }
  return verdict(ok, "median translation error " + s);
}

// 6. End-to-end odometry on the corridor.
Outcome corridor_odometry() {
  const LidarIntrinsics in = default_intrinsics();
  const Scene scene = standard_scene("corridor");
  const Trajectory drive = standard_drive("corridor", 50);
  std::vector<RawScan> scans;
  for (std::size_t i = 0; i < drive.size(); ++i) {
    scans.push_back(simulate_scan(scene, drive.poses[i], in, 100 + i, drive.timestamps[i]));
  }
  double mu[3] = {0, 0, 0};
  const Variant variants[3] = {Variant::kBaseline, Variant::kNcf, Variant::kSalo};
  for (int v = 0; v < 3; ++v) mu[v] = relative_error(run_odometry(scans, variant_config(variants[v])).trajectory,
                                                     drive).mean;
  return verdict(mu[2] < 1.0 && mu[2] <= mu[0],
                 fmt("mean relative error per 100 m: salo %.3f, ncf %.3f, bl %.3f", mu[2], mu[1], mu[0]));
}

// 7. Registration exactness.
void add_plane(FeatureCloud& c, const Vec3& origin, const Vec3& a, const Vec3& b, int steps) {
  const Vec3 n = a.cross(b).normalized();
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      FeaturePoint f;
      f.position = origin + (i + 0.5) / steps * a + (j + 0.5) / steps * b;
      f.normal = n;
      f.range = f.position.norm();
      c.points.push_back(f);
    }
  }
}

FeatureCloud transformed(const FeatureCloud& c, const RigidTransform& t) {
  FeatureCloud out = c;
  for (auto& p : out.points) {
    p.position = t * p.position;
    p.normal = t.rotation() * p.normal;
    p.range = p.position.norm();
  }
  return out;
}

Outcome registration_exactness() {
  FeatureCloud corner;
  corner.intrinsics = default_intrinsics();
  add_plane(corner, Vec3(2, -2, -1), Vec3(4, 0, 0), Vec3(0, 4, 0), 20);
  add_plane(corner, Vec3(2, -2, -1), Vec3(0, 4, 0), Vec3(0, 0, 4), 20);
  add_plane(corner, Vec3(2, -2, -1), Vec3(0, 0, 4), Vec3(4, 0, 0), 20);

  const Vec3 t(0.1, -0.05, 0.2);
  CorrespondenceSet ids;
  for (std::size_t i = 0; i < corner.size(); ++i) ids.matches.push_back({i, i, 0.0});
  const RigidTransform one = estimate_point_to_plane(transformed(corner, RigidTransform::Translation(-t)), corner, ids);
  const double step_err = std::max((one.translation() - t).norm(), one.angle());

  std::mt19937_64 gen(1007);
  std::uniform_real_distribution<double> ang(0.0, 0.1), len(0.0, 0.5);
  IcpConfig cfg;
  cfg.rejector = Rejector::kDistance;
  cfg.max_distance = 2.0;
  int recovered = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const RigidTransform gt(rotation_exp(random_unit(gen) * ang(gen)), random_unit(gen) * len(gen));
    const IcpReport rep = icp_align(corner, transformed(corner, gt.inverse()), RigidTransform::Identity(), cfg);
    const RigidTransform e = gt.inverse() * rep.final_transform;
    recovered += rep.iterations <= 30 && e.translation().norm() < 1e-4 && e.angle() < 1e-4;
  }
  return verdict(step_err < 1e-9 && recovered >= 99,
                 fmt("one-step translation error %.1e; %d/100 small transforms recovered to 1e-4", step_err,
                     recovered));
}

// 8. Relative error metric sanity.
Outcome metric_sanity() {
  Trajectory line, scaled;
  for (int i = 0; i <= 300; ++i) {
    line.poses.push_back(RigidTransform::Translation(Vec3(i, 0, 0)));
    scaled.poses.push_back(RigidTransform::Translation(Vec3(1.01 * i, 0, 0)));
  }
  const ErrorStats same = relative_error(line, line);
  const ErrorStats s = relative_error(scaled, line);
  double worst = 0.0;
  for (double e : s.per_segment_errors) worst = std::max(worst, std::abs(e - 1.0));
  return verdict(same.mean == 0.0 && worst < 1e-9,
                 fmt("identical mean %.1e; scaled line %zu segments, max |e - 1| %.1e", same.mean,
                     s.per_segment_errors.size(), worst));
}

// 9. Filter pass rate on the street.
Outcome pass_rate() {
  const Scene scene = standard_scene("street");
  const Trajectory drive = standard_drive("street", 50);
  const LidarIntrinsics in = default_intrinsics();
  double lo = 1.0, hi = 0.0, sum = 0.0;
  int n = 0;
  for (std::size_t f = 0; f < drive.size(); f += 5) {
    const FeatureCloud c = filter_points(simulate_scan(scene, drive.poses[f], in, 7 + f), {});
    const double frac = static_cast<double>(c.size()) / static_cast<double>(c.source_size);
    lo = std::min(lo, frac);
    hi = std::max(hi, frac);
    sum += frac;
    ++n;
  }
  return verdict(lo >= 0.05 && hi <= 0.15,
                 fmt("pass fraction over %d frames: mean %.3f, min %.3f, max %.3f", n, sum / n, lo, hi));
}

// 10. Optional KITTI sequence 00.
LidarIntrinsics hdl64_intrinsics() {
  LidarIntrinsics in;
  in.azimuth_increment = 0.08 * kDeg;
  in.ring_count = 64;
  in.ring_pitch.assign(63, 26.9 / 63.0 * kDeg);
  in.range_noise_std = 0.02;
  return in;
}

std::optional<RigidTransform> read_velo_to_cam(const fs::path& calib) {
  std::ifstream in(calib);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("Tr:", 0) != 0) continue;
    std::istringstream ss(line.substr(3));
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) ss >> m(r, c);
    }
    if (!ss) return std::nullopt;
    return RigidTransform(orthonormalize(m.topLeftCorner<3, 3>()), m.topRightCorner<3, 1>());
  }
  return std::nullopt;
}

Outcome kitti_sequence() {
  const char* root_env = std::getenv("BEAMTRIM_KITTI_ROOT");
  const fs::path root = root_env ? root_env : "data/kitti";
  const fs::path velo = root / "sequences/00/velodyne", gt_path = root / "poses/00.txt";
  if (!fs::is_directory(velo) || !fs::exists(gt_path)) {
    return {Outcome::Kind::kSkip, "KITTI sequence 00 not found under " + root.string()};
  }
  const Trajectory gt = read_poses(gt_path);
  const auto tr = read_velo_to_cam(root / "sequences/00/calib.txt");
  const RigidTransform cam_from_velo = tr.value_or(RigidTransform::Identity());
  std::vector<double> stamps;
  if (fs::exists(root / "sequences/00/times.txt")) stamps = read_timestamps(root / "sequences/00/times.txt");

  const LidarIntrinsics in = hdl64_intrinsics();
  OdometryRunner runner(variant_config(Variant::kSalo));
  for (std::size_t i = 0; i < gt.size(); ++i) {
    char name[16];
    std::snprintf(name, sizeof(name), "%06zu.bin", i);
    const double ts = i < stamps.size() ? stamps[i] : 0.1 * static_cast<double>(i);
    runner.process(read_velodyne_bin(velo / name, in, ts));
  }
  Trajectory est = runner.trajectory();
  for (auto& p : est.poses) p = cam_from_velo * p * cam_from_velo.inverse();
  const double mu = relative_error(est, gt).mean;
  return verdict(mu <= 2.0, fmt("salo mean relative error %.3f per 100 m over %zu frames%s", mu, gt.size(),
                                tr ? "" : " (no calib, velodyne frame assumed)"));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    bool gating;
  };
  const std::vector<Criterion> criteria = {
      {1, "svd jacobian oracle", svd_jacobian_oracle, true},
      {2, "covariance propagation oracle", covariance_oracle, true},
      {3, "ncf selectivity", ncf_selectivity, true},
      {4, "gcr correctness", gcr_correctness, true},
      {5, "geom vs dst on street pairs", rejector_comparison, true},
      {6, "corridor odometry", corridor_odometry, true},
      {7, "registration exactness", registration_exactness, true},
      {8, "metric sanity", metric_sanity, true},
      {9, "filter pass rate", pass_rate, true},
      {10, "kitti sequence 00", kitti_sequence, false},
  };
  // Runtime budgets in seconds, where one is set.
  const double budget[11] = {0, 10, 60, 0, 0, 600, 300, 0, 0, 0, 0};

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Outcome::Kind::kFail, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget[c.id] > 0 && sec > budget[c.id] && o.kind == Outcome::Kind::kPass) {
      o.kind = Outcome::Kind::kFail;
      o.detail += fmt("; over the %.0f s budget", budget[c.id]);
    }
    const char* tag = o.kind == Outcome::Kind::kPass ? "PASS" : o.kind == Outcome::Kind::kFail ? "FAIL" : "SKIP";
    std::printf("criterion %2d %s  %s: %s [%.1f s]\n", c.id, tag, c.name, o.detail.c_str(), sec);
    std::fflush(stdout);
    if (c.gating && o.kind == Outcome::Kind::kFail) ++failed;
  }
  std::printf("%d gating criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
