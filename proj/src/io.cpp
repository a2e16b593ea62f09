#include "beamtrim/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "beamtrim/errors.hpp"

namespace beamtrim {

namespace {

static_assert(std::endian::native == std::endian::little, "velodyne codec assumes a little-endian host");

constexpr std::size_t kRecordSize = 16;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedFile("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int nearest_ring(const Vec3& p, const std::vector<double>& elevations) {
  const double elev = std::atan2(p.z(), p.head<2>().norm());
  int best = 0;
  for (int j = 1; j < static_cast<int>(elevations.size()); ++j) {
    if (std::abs(elevations[j] - elev) < std::abs(elevations[best] - elev)) best = j;
  }
  return best;
}

RawScan read_velodyne_bin(const std::filesystem::path& path, const LidarIntrinsics& intrinsics,
                          double timestamp) {
  const std::string bytes = read_file(path);
  if (bytes.size() % kRecordSize != 0) {
    throw MalformedFile(path.string() + ": size " + std::to_string(bytes.size()) + " is not a multiple of 16");
  }
  const auto elevations = intrinsics.ring_elevations();
  const int columns = intrinsics.column_count();

  RawScan scan;
  scan.timestamp = timestamp;
  scan.intrinsics = intrinsics;
  scan.points.reserve(bytes.size() / kRecordSize);
  for (std::size_t off = 0; off < bytes.size(); off += kRecordSize) {
    float rec[4];
    std::memcpy(rec, bytes.data() + off, kRecordSize);
    const Vec3 p(rec[0], rec[1], rec[2]);
    if (!p.allFinite()) throw MalformedFile(path.string() + ": non-finite coordinate");
    if (p.norm() < kMinRange) continue;
    double az = std::atan2(p.y(), p.x());
    if (az < 0.0) az += 2.0 * 3.14159265358979323846;
    const int col = static_cast<int>(std::lround(az / intrinsics.azimuth_increment)) % columns;
    scan.points.emplace_back(p, nearest_ring(p, elevations), col);
  }
  if (scan.empty()) throw EmptyScan(path.string() + ": no usable points");
  return scan;
}

void write_velodyne_bin(const std::filesystem::path& path, const RawScan& scan) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& p : scan.points) {
    const float rec[4] = {static_cast<float>(p.position.x()), static_cast<float>(p.position.y()),
                          static_cast<float>(p.position.z()), 0.0f};
    out.write(reinterpret_cast<const char*>(rec), kRecordSize);
  }
  if (!out) throw Error("short write to " + path.string());
}

std::string format_pose(const RigidTransform& pose) {
  const Mat3& r = pose.rotation();
  const Vec3& t = pose.translation();
  const double v[12] = {r(0, 0), r(0, 1), r(0, 2), t.x(), r(1, 0), r(1, 1),
                        r(1, 2), t.y(),   r(2, 0), r(2, 1), r(2, 2), t.z()};
  std::string line;
  char buf[32];
  for (int i = 0; i < 12; ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    if (i) line += ' ';
    line += buf;
  }
  return line;
}

void write_poses(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& pose : traj.poses) out << format_pose(pose) << '\n';
  if (!out) throw Error("short write to " + path.string());
}

Trajectory read_poses(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  Trajectory traj;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<double> v;
    std::string tok;
    while (ls >> tok) {
      char* end = nullptr;
      const double d = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0' || !std::isfinite(d)) {
        throw ParseError(line_no, "not a finite number: '" + tok + "'");
      }
      v.push_back(d);
    }
    if (v.size() != 12) {
      throw ParseError(line_no, "expected 12 values, found " + std::to_string(v.size()));
    }
    Mat3 r;
    r << v[0], v[1], v[2], v[4], v[5], v[6], v[8], v[9], v[10];
    if (orthonormality_error(r) > 1e-6 || std::abs(r.determinant() - 1.0) > 1e-6) {
      std::cerr << "warning: " << path.string() << ":" << line_no << ": rotation re-orthonormalized\n";
    }
    traj.poses.emplace_back(r, Vec3(v[3], v[7], v[11]));
  }
  return traj;
}

std::vector<double> read_timestamps(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    char* end = nullptr;
    const double d = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || line.find_first_not_of(" \t\r", end - line.c_str()) != std::string::npos) {
      throw ParseError(line_no, "malformed timestamp");
    }
    out.push_back(d);
  }
  return out;
}

void write_timestamps(const std::filesystem::path& path, const std::vector<double>& stamps) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  char buf[32];
  for (double t : stamps) {
    std::snprintf(buf, sizeof(buf), "%.17g", t);
    out << buf << '\n';
  }
}

}  // namespace beamtrim
