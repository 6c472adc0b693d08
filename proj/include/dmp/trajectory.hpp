#ifndef DMP_TRAJECTORY_HPP_
#define DMP_TRAJECTORY_HPP_

#include <Eigen/Dense>

namespace dmp {

/**
 * @brief Time-stamped samples of a demonstration or rollout.
 *
 * Rows are samples, columns are dimensions. Velocities and accelerations are
 * world-time derivatives (dx/dt, d2x/dt2), independent of any temporal
 * scaling applied during execution.
 */
struct Trajectory {
    Eigen::VectorXd times;          // M, strictly increasing, times[0] == 0
    Eigen::MatrixXd positions;      // M x d
    Eigen::MatrixXd velocities;     // M x d
    Eigen::MatrixXd accelerations;  // M x d

    int samples() const { return static_cast<int>(times.size()); }
    int dims() const { return static_cast<int>(positions.cols()); }
    double duration() const { return times[times.size() - 1]; }

    /// Throws ValidationError unless M >= 2, times start at zero and strictly
    /// increase, and all arrays agree in shape.
    void validate() const;

    /// Fills velocities/accelerations by central finite differences
    /// (one-sided at the ends) from positions alone.
    static Trajectory from_positions(Eigen::VectorXd times, Eigen::MatrixXd positions);

    /// Piecewise-linear interpolation, clamped to the end states outside the
    /// recorded time range.
    Eigen::VectorXd position_at(double t) const;
    Eigen::VectorXd acceleration_at(double t) const;
};

}  // namespace dmp

#endif  // DMP_TRAJECTORY_HPP_
