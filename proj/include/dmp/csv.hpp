#ifndef DMP_CSV_HPP_
#define DMP_CSV_HPP_

#include <string>

#include "dmp/trajectory.hpp"

namespace dmp {

/// Serializes with header `t,x1..xd,v1..vd,a1..ad`, one row per sample,
/// 17 significant digits (lossless double round-trip), LF line endings.
std::string trajectory_to_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Strict parser for the same schema; errors name the offending line and
/// column. Throws ValidationError on malformed content, IoError on missing
/// files.
Trajectory parse_trajectory_csv(const std::string& text);
Trajectory read_trajectory_csv(const std::string& path);

/// Shared formatting for all emitters: shortest text that round-trips the
/// double exactly (printf "%.17g").
std::string format_double(double value);

}  // namespace dmp

#endif  // DMP_CSV_HPP_
