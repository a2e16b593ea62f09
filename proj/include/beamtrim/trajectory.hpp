#pragma once

#include <cstddef>
#include <vector>

#include "beamtrim/geometry.hpp"

namespace beamtrim {

/// World-from-sensor poses. timestamps is either empty (uniform spacing) or
/// the same length as poses.
struct Trajectory {
  std::vector<RigidTransform> poses;
  std::vector<double> timestamps;

  std::size_t size() const { return poses.size(); }
  bool empty() const { return poses.empty(); }
  bool has_timestamps() const { return !timestamps.empty() && timestamps.size() == poses.size(); }
};

}  // namespace beamtrim
