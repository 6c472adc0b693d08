#ifndef DMP_DEMOS_HPP_
#define DMP_DEMOS_HPP_

#include "dmp/trajectory.hpp"

namespace dmp {

/// Planar spiral (t cos(pi t), t sin(pi t)) on [0, duration], sampled every
/// dt, with exact analytic velocities and accelerations.
Trajectory spiral_demo(double duration = 1.0, double dt = 1e-3);

/// Constant-speed straight line from start to goal over [0, duration].
Trajectory line_demo(const Eigen::VectorXd& start, const Eigen::VectorXd& goal, double duration,
                     double dt);

}  // namespace dmp

#endif  // DMP_DEMOS_HPP_
