#ifndef DMP_METRICS_HPP_
#define DMP_METRICS_HPP_

#include <variant>
#include <vector>

#include "dmp/obstacles.hpp"
#include "dmp/trajectory.hpp"

namespace dmp {

/// Obstacles a trajectory can be scored against: superquadrics contribute
/// their isopotential value, point obstacles their Euclidean distance.
using ClearanceObstacle = std::variant<PointObstacle, Superquadric>;

/**
 * @brief Comparison of an adapted trajectory against the reference behavior.
 *
 * Deviation and acceleration-norm series live on the reference time grid
 * (the adapted trajectory is linearly interpolated onto it, held constant
 * beyond its recorded range). Clearance is computed from the raw adapted
 * samples.
 */
struct ComparisonReport {
    Eigen::VectorXd deviation_series;    // ||x_ref(t) - x_adapted(t)||
    Eigen::VectorXd accel_norm_series;   // ||adapted acceleration(t)||
    double max_deviation = 0.0;
    double max_accel_norm = 0.0;
    double final_goal_error = 0.0;       // ||adapted end - reference end||
    double min_clearance = 0.0;          // +inf when no obstacles given
    bool collided = false;               // min_clearance <= 0
};

/// Rejects trajectories with disjoint time ranges or mismatched dimensions.
ComparisonReport compare(const Trajectory& reference, const Trajectory& adapted,
                         const std::vector<ClearanceObstacle>& obstacles = {});

}  // namespace dmp

#endif  // DMP_METRICS_HPP_
