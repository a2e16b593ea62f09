#pragma once

#include <string>
#include <vector>

#include "beamtrim/bench.hpp"
#include "beamtrim/trajectory.hpp"

namespace beamtrim {

struct NamedTrajectory {
  std::string name;
  Trajectory trajectory;
};

/// Top-down (x, y) overlay of the trajectories with equal axis scaling.
std::string trajectory_svg(const std::vector<NamedTrajectory>& trajectories);

/// Box plot of translation error per noise level, dst and geom side by side.
std::string bench_svg(const BenchReport& report);

}  // namespace beamtrim
