// Test-only oracles: finite differences, deterministic random states, and the
// closed-form solution of the unforced transformation system.
#ifndef DMP_TESTS_SUPPORT_ORACLES_HPP_
#define DMP_TESTS_SUPPORT_ORACLES_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>

#include "dmp/trajectory.hpp"

namespace dmp_tests {

/// Central finite-difference gradient of a scalar function of position.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h = 1e-6) {
    Eigen::VectorXd grad(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Eigen::VectorXd hi = x, lo = x;
        hi[i] += h;
        lo[i] -= h;
        grad[i] = (f(hi) - f(lo)) / (2.0 * h);
    }
    return grad;
}

inline double relative_error(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
    const double scale = std::max(want.norm(), 1e-12);
    return (got - want).norm() / scale;
}

inline Eigen::VectorXd random_unit(std::mt19937& rng, int dims) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd v(dims);
    do {
        for (int i = 0; i < dims; ++i) v[i] = normal(rng);
    } while (v.norm() < 1e-6);
    return v / v.norm();
}

inline Eigen::MatrixXd random_rotation(std::mt19937& rng, int dims) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd a(dims, dims);
    for (int r = 0; r < dims; ++r) {
        for (int c = 0; c < dims; ++c) a(r, c) = normal(rng);
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);
    return q;
}

/// Exact solution of tau^2 xdd + D tau xd + K x = K g - K (g - x0) exp(-alpha t / tau)
/// under critical damping D = 2 sqrt(K), with x(0) = x0, xd(0) = 0 and
/// tau = duration. The final sample is snapped to the exact equilibrium
/// (g, 0, 0), so a learner that takes its goal from the final sample sees a
/// desired forcing that vanishes at every sample. Pass a large alpha (e.g.
/// 20 with K ~ 1000) so the snap stays below ~1e-7 and the data remain an
/// exact solution to rounding.
inline dmp::Trajectory unforced_solution(const Eigen::VectorXd& start, const Eigen::VectorXd& goal,
                                         double gain, double alpha, double duration, double dt) {
    const double tau = duration;
    const double mu = alpha / tau;
    const double omega_scaled = std::sqrt(gain);  // omega * tau
    const double omega = omega_scaled / tau;
    const double kappa = gain / ((alpha - omega_scaled) * (alpha - omega_scaled));

    const long n = std::lround(duration / dt);
    const auto d = start.size();
    dmp::Trajectory traj;
    traj.times.resize(n + 1);
    traj.positions.resize(n + 1, d);
    traj.velocities.resize(n + 1, d);
    traj.accelerations.resize(n + 1, d);
    for (Eigen::Index p = 0; p < d; ++p) {
        const double c = -kappa * (goal[p] - start[p]);
        const double a = start[p] - goal[p] - c;
        const double b = mu * c + omega * a;
        for (long k = 0; k <= n; ++k) {
            const double t = static_cast<double>(k) * dt;
            const double em = std::exp(-mu * t);
            const double eo = std::exp(-omega * t);
            traj.times[k] = t;
            traj.positions(k, p) = goal[p] + c * em + (a + b * t) * eo;
            traj.velocities(k, p) = -mu * c * em + (b - omega * (a + b * t)) * eo;
            traj.accelerations(k, p) =
                    mu * mu * c * em + (omega * omega * (a + b * t) - 2.0 * omega * b) * eo;
        }
    }
    traj.positions.row(n) = goal;
    traj.velocities.row(n).setZero();
    traj.accelerations.row(n).setZero();
    traj.validate();
    return traj;
}

}  // namespace dmp_tests

#endif  // DMP_TESTS_SUPPORT_ORACLES_HPP_
