#include "dmp/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "dmp/errors.hpp"

namespace dmp {

void Trajectory::validate() const {
    const auto m = times.size();
    if (m < 2) throw ValidationError("Trajectory: need at least two samples");
    if (times[0] != 0.0) throw ValidationError("Trajectory: times must start at zero");
    for (Eigen::Index k = 0; k + 1 < m; ++k) {
        if (!(times[k] < times[k + 1])) {
            throw ValidationError("Trajectory: times must be strictly increasing");
        }
    }
    if (positions.rows() != m || velocities.rows() != m || accelerations.rows() != m) {
        throw ValidationError("Trajectory: sample counts disagree");
    }
    const auto d = positions.cols();
    if (d < 1 || velocities.cols() != d || accelerations.cols() != d) {
        throw ValidationError("Trajectory: dimension counts disagree");
    }
    if (!positions.allFinite() || !velocities.allFinite() || !accelerations.allFinite()) {
        throw ValidationError("Trajectory: samples must be finite");
    }
}

namespace {

// Central differences inside, one-sided at the ends; handles non-uniform grids.
Eigen::MatrixXd differentiate(const Eigen::VectorXd& t, const Eigen::MatrixXd& y) {
    const Eigen::Index m = t.size();
    Eigen::MatrixXd dy(m, y.cols());
    dy.row(0) = (y.row(1) - y.row(0)) / (t[1] - t[0]);
    for (Eigen::Index k = 1; k + 1 < m; ++k) {
        dy.row(k) = (y.row(k + 1) - y.row(k - 1)) / (t[k + 1] - t[k - 1]);
    }
    dy.row(m - 1) = (y.row(m - 1) - y.row(m - 2)) / (t[m - 1] - t[m - 2]);
    return dy;
}

Eigen::VectorXd interpolate(const Eigen::VectorXd& times, const Eigen::MatrixXd& values, double t) {
    const Eigen::Index m = times.size();
    if (t <= times[0]) return values.row(0);
    if (t >= times[m - 1]) return values.row(m - 1);
    const double* begin = times.data();
    const Eigen::Index hi = std::upper_bound(begin, begin + m, t) - begin;
    const double w = (t - times[hi - 1]) / (times[hi] - times[hi - 1]);
    return values.row(hi - 1) * (1.0 - w) + values.row(hi) * w;
}

}  // namespace

Trajectory Trajectory::from_positions(Eigen::VectorXd times, Eigen::MatrixXd positions) {
    Trajectory traj;
    traj.times = std::move(times);
    traj.positions = std::move(positions);
    if (traj.times.size() < 2 || traj.positions.rows() != traj.times.size()) {
        throw ValidationError("Trajectory: need at least two position samples on matching times");
    }
    traj.velocities = differentiate(traj.times, traj.positions);
    traj.accelerations = differentiate(traj.times, traj.velocities);
    traj.validate();
    return traj;
}

Eigen::VectorXd Trajectory::position_at(double t) const { return interpolate(times, positions, t); }

Eigen::VectorXd Trajectory::acceleration_at(double t) const { return interpolate(times, accelerations, t); }

}  // namespace dmp
