#include "dmp/dmp.hpp"

#include <cmath>
#include <string>

#include "dmp/errors.hpp"

namespace dmp {

Eigen::VectorXd Dmp::forcing(double s) const {
    return weights * basis.normalized_row(s);
}

void Dmp::validate() const {
    const auto d = elastic.size();
    if (d < 1) throw ValidationError("Dmp: need at least one dimension");
    if (damping.size() != d || start.size() != d || goal.size() != d || weights.rows() != d) {
        throw ValidationError("Dmp: dimension mismatch between fields");
    }
    if (weights.cols() != basis.count()) {
        throw ValidationError("Dmp: weight columns must equal basis count");
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        if (!(elastic[i] > 0.0)) throw ValidationError("Dmp: elastic gains must be positive");
        if (!(damping[i] > 0.0)) throw ValidationError("Dmp: damping gains must be positive");
    }
    if (!(tau > 0.0) || !(alpha > 0.0) || !(demo_duration > 0.0)) {
        throw ValidationError("Dmp: tau, alpha and demo duration must be positive");
    }
    if (!weights.allFinite()) throw ValidationError("Dmp: weights must be finite");
}

Dmp learn_from_demo(const Trajectory& demo, const LearnOptions& options) {
    demo.validate();
    const int m = demo.samples();
    const int d = demo.dims();
    if (m < 3) throw ValidationError("learn_from_demo: need at least three samples");
    const double duration = demo.duration();
    if (!(duration > 0.0)) throw ValidationError("learn_from_demo: demonstration duration is zero");
    if (options.n_basis < 1) throw ValidationError("learn_from_demo: n_basis must be >= 1");

    Eigen::VectorXd elastic;
    if (options.elastic.size() == d) {
        elastic = options.elastic;
    } else if (options.elastic.size() == 1) {
        elastic = Eigen::VectorXd::Constant(d, options.elastic[0]);
    } else {
        throw ValidationError("learn_from_demo: elastic gains must have size 1 or d");
    }
    Eigen::VectorXd damping;
    if (options.damping) {
        damping = *options.damping;
        if (damping.size() == 1) damping = Eigen::VectorXd::Constant(d, damping[0]);
        if (damping.size() != d) throw ValidationError("learn_from_demo: damping must have size 1 or d");
    } else {
        damping = 2.0 * elastic.array().sqrt();  // critical damping
    }

    const double tau = duration;
    const Eigen::VectorXd x0 = demo.positions.row(0);
    const Eigen::VectorXd g = demo.positions.row(m - 1);
    const CanonicalSystem cs(options.alpha, tau);
    BasisSet basis = BasisSet::make(options.n_basis, options.alpha, duration);
    const int n_weights = basis.count();

    // Desired forcing from the transformation system solved for f, with
    // v = tau * dx/dt and dv/dt = tau * d2x/dt2:
    //   f = (tau^2 xdd + D tau xd) / K - (g - x) + (g - x0) s
    Eigen::MatrixXd target(m, d);
    Eigen::MatrixXd design(m, n_weights);
    for (int k = 0; k < m; ++k) {
        const double s = cs.phase_at(demo.times[k]);
        design.row(k) = basis.normalized_row(s);
        for (int p = 0; p < d; ++p) {
            const double xdd = demo.accelerations(k, p);
            const double xd = demo.velocities(k, p);
            target(k, p) = (tau * tau * xdd + damping[p] * tau * xd) / elastic[p] -
                           (g[p] - demo.positions(k, p)) + (g[p] - x0[p]) * s;
        }
    }

    double reg = options.regularization;
    if (reg < 0.0) reg = 1e-10 * static_cast<double>(m);
    Eigen::MatrixXd normal = design.transpose() * design;
    normal.diagonal().array() += reg;
    const Eigen::LDLT<Eigen::MatrixXd> solver(normal);
    Eigen::MatrixXd weights(d, n_weights);
    for (int p = 0; p < d; ++p) {
        weights.row(p) = solver.solve(design.transpose() * target.col(p)).transpose();
    }

    Dmp dmp{std::move(elastic), std::move(damping), tau,     options.alpha,
            std::move(basis),   std::move(weights), x0,      g,
            duration};
    dmp.validate();
    return dmp;
}

namespace detail {

Eigen::VectorXd scaled_acceleration(const Dmp& dmp, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& v, double s, double tau,
                                    const Eigen::VectorXd& start, const Eigen::VectorXd& goal,
                                    const Eigen::VectorXd& phi) {
    const Eigen::VectorXd f = dmp.forcing(s);
    Eigen::VectorXd vdot(x.size());
    for (Eigen::Index p = 0; p < x.size(); ++p) {
        vdot[p] = (dmp.elastic[p] * (goal[p] - x[p]) - dmp.damping[p] * v[p] -
                   dmp.elastic[p] * (goal[p] - start[p]) * s + dmp.elastic[p] * f[p] + phi[p]) /
                  tau;
    }
    return vdot;
}

}  // namespace detail

Trajectory rollout(const Dmp& dmp, const Eigen::VectorXd& start, const Eigen::VectorXd& goal,
                   const RolloutOptions& options, const PerturbationField& field) {
    dmp.validate();
    const int d = dmp.dims();
    if (start.size() != d || goal.size() != d) {
        throw ValidationError("rollout: start/goal dimension mismatch");
    }
    if (!(options.dt > 0.0)) throw ValidationError("rollout: dt must be positive");
    if (!(options.horizon >= options.dt)) throw ValidationError("rollout: horizon must be >= dt");
    const double tau = options.tau.value_or(dmp.tau);
    if (!(tau > 0.0)) throw ValidationError("rollout: tau must be positive");

    const double dt = options.dt;
    const long n_steps = std::max<long>(1, std::lround(options.horizon / dt));
    const CanonicalSystem cs(dmp.alpha, tau);

    Trajectory traj;
    traj.times.resize(n_steps + 1);
    traj.positions.resize(n_steps + 1, d);
    traj.velocities.resize(n_steps + 1, d);
    traj.accelerations.resize(n_steps + 1, d);

    Eigen::VectorXd x = start;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);

    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double s = cs.phase_at(t);
        const Eigen::VectorXd xdot = v / tau;
        Eigen::VectorXd phi = zero;
        if (field) {
            try {
                phi = field(x, xdot, t);
            } catch (const NumericalError& err) {
                throw NumericalError(std::string(err.what()) + " (rollout aborted at t=" +
                                     std::to_string(t) + ")");
            }
        }
        const Eigen::VectorXd vdot =
                detail::scaled_acceleration(dmp, x, v, s, tau, start, goal, phi);

        traj.times[k] = t;
        traj.positions.row(k) = x;
        traj.velocities.row(k) = xdot;
        traj.accelerations.row(k) = vdot / tau;

        if (k < n_steps) {
            x += dt * xdot;
            v += dt * vdot;
            if (!x.allFinite() || x.norm() > options.divergence_bound) {
                throw NumericalError("rollout diverged at t=" + std::to_string(t + dt) +
                                     "; unstable gains or pathological field");
            }
        }
    }
    return traj;
}

}  // namespace dmp
