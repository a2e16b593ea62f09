#pragma once

#include <string>
#include <vector>

#include "beamtrim/trajectory.hpp"

namespace beamtrim {

/// Relative positioning error over fixed-length ground-truth segments.
/// stddev is the population standard deviation (divides by N).
struct ErrorStats {
  std::vector<double> per_segment_errors;
  double mean = 0.0;
  double stddev = 0.0;
  double segment_length = 100.0;

  static ErrorStats from_errors(std::vector<double> errors, double segment_length);
};

/// For every start i, the first j whose ground-truth path length from i
/// reaches `segment`; the error is the translation norm of
/// (T_gt(i->j))^-1 * T_est(i->j). Starts without such a j are skipped.
/// Throws TrajectoryTooShort when no segment fits and std::invalid_argument
/// when the sequences differ in length. Errors in meters per `segment` meters,
/// which for the default 100 m equals percent.
ErrorStats relative_error(const Trajectory& estimate, const Trajectory& ground_truth, double segment = 100.0);

/// Tab-separated "name  mu  sigma  segments" table with a header row.
std::string format_stats_table(const std::vector<std::string>& names, const std::vector<ErrorStats>& stats);

}  // namespace beamtrim
