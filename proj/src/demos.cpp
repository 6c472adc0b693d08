#include "dmp/demos.hpp"

#include <cmath>

#include "dmp/errors.hpp"

namespace dmp {

namespace {

long sample_count(double duration, double dt) {
    if (!(duration > 0.0) || !(dt > 0.0) || dt > duration) {
        throw ValidationError("demo: need 0 < dt <= duration");
    }
    return std::max<long>(1, std::lround(duration / dt));
}

}  // namespace

Trajectory spiral_demo(double duration, double dt) {
    const long n = sample_count(duration, dt);
    Trajectory traj;
    traj.times.resize(n + 1);
    traj.positions.resize(n + 1, 2);
    traj.velocities.resize(n + 1, 2);
    traj.accelerations.resize(n + 1, 2);
    const double pi = M_PI;
    for (long k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double c = std::cos(pi * t);
        const double s = std::sin(pi * t);
        traj.times[k] = t;
        traj.positions(k, 0) = t * c;
        traj.positions(k, 1) = t * s;
        traj.velocities(k, 0) = c - pi * t * s;
        traj.velocities(k, 1) = s + pi * t * c;
        traj.accelerations(k, 0) = -2.0 * pi * s - pi * pi * t * c;
        traj.accelerations(k, 1) = 2.0 * pi * c - pi * pi * t * s;
    }
    traj.validate();
    return traj;
}

Trajectory line_demo(const Eigen::VectorXd& start, const Eigen::VectorXd& goal, double duration,
                     double dt) {
    if (start.size() != goal.size() || start.size() < 1) {
        throw ValidationError("line_demo: start/goal dimension mismatch");
    }
    const long n = sample_count(duration, dt);
    const auto d = start.size();
    Trajectory traj;
    traj.times.resize(n + 1);
    traj.positions.resize(n + 1, d);
    traj.velocities.resize(n + 1, d);
    traj.accelerations.setZero(n + 1, d);
    const Eigen::VectorXd rate = (goal - start) / duration;
    for (long k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) * dt;
        traj.times[k] = t;
        traj.positions.row(k) = start + rate * t;
        traj.velocities.row(k) = rate;
    }
    traj.validate();
    return traj;
}

}  // namespace dmp
