#ifndef DMP_DMP_HPP_
#define DMP_DMP_HPP_

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "dmp/basis.hpp"
#include "dmp/phase.hpp"
#include "dmp/trajectory.hpp"

namespace dmp {

/// Repulsive acceleration added to the transformation system. Receives the
/// current position, the world-time velocity dx/dt, and the elapsed time, and
/// returns an acceleration contribution of matching dimension. World-time
/// velocity keeps relative-velocity terms consistent with obstacle
/// velocities, which are specified in world time. Must be re-entrant.
using PerturbationField =
        std::function<Eigen::VectorXd(const Eigen::VectorXd& position,
                                      const Eigen::VectorXd& velocity, double time)>;

/**
 * @brief A learned movement primitive.
 *
 * Encodes one demonstration as the forcing term of a critically damped
 * spring-mass system,
 *
 *   tau * dv/dt = K(g - x) - D v - K(g - x0) s + K f(s) + phi(x, v)
 *   tau * dx/dt = v,
 *
 * with phase s from the canonical system. Rolling out with new endpoints
 * reproduces the demonstrated shape between them and always converges to the
 * goal, since f is gated by s.
 */
struct Dmp {
    Eigen::VectorXd elastic;   // diagonal of K, positive
    Eigen::VectorXd damping;   // diagonal of D, positive (2 sqrt(K) by default)
    double tau = 1.0;          // temporal scaling; demo duration after learning
    double alpha = 4.0;        // phase decay gain
    BasisSet basis;
    Eigen::MatrixXd weights;   // d x (N+1)
    Eigen::VectorXd start;     // demo initial position x0
    Eigen::VectorXd goal;      // demo final position g
    double demo_duration = 1.0;

    int dims() const { return static_cast<int>(elastic.size()); }
    CanonicalSystem canonical() const { return CanonicalSystem(alpha, tau); }

    /// Forcing vector f(s), one component per dimension.
    Eigen::VectorXd forcing(double s) const;

    void validate() const;
};

struct LearnOptions {
    Eigen::VectorXd elastic;                  // size d, or size 1 to broadcast
    std::optional<Eigen::VectorXd> damping;   // default: critical, 2 sqrt(K)
    double alpha = 4.0;
    int n_basis = 50;
    double regularization = -1.0;             // < 0 selects 1e-10 * samples

    static LearnOptions with_gain(double k) {
        LearnOptions o;
        o.elastic = Eigen::VectorXd::Constant(1, k);
        return o;
    }
};

/**
 * @brief Fits DMP weights to one demonstration.
 *
 * The desired forcing term is recovered by solving the transformation system
 * for f at every sample, using the demonstration's world-time derivatives,
 * then ridge-regularized least squares fits the basis weights per dimension.
 * Endpoints, duration and tau are taken from the demonstration.
 */
Dmp learn_from_demo(const Trajectory& demo, const LearnOptions& options);

struct RolloutOptions {
    double dt = 1e-3;
    double horizon = 1.0;               // seconds of world time
    double divergence_bound = 1e6;      // abort when ||x|| exceeds this
    std::optional<double> tau;          // override the learned temporal scaling
};

/**
 * @brief Integrates the transformation system with explicit Euler.
 *
 * Starts from (x0, v = 0, s = 1); the phase is evaluated in closed form at
 * every step. Recorded velocities and accelerations are world-time
 * derivatives. Throws NumericalError on divergence or when the perturbation
 * field reports a failure.
 */
Trajectory rollout(const Dmp& dmp, const Eigen::VectorXd& start, const Eigen::VectorXd& goal,
                   const RolloutOptions& options, const PerturbationField& field = {});

namespace detail {

/// Scaled acceleration dv/dt of the transformation system; phi is the
/// perturbation already evaluated at the current state. Shared between the
/// single rollout and the multi-robot stepping so both follow identical
/// arithmetic.
Eigen::VectorXd scaled_acceleration(const Dmp& dmp, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& v, double s, double tau,
                                    const Eigen::VectorXd& start, const Eigen::VectorXd& goal,
                                    const Eigen::VectorXd& phi);

}  // namespace detail

}  // namespace dmp

#endif  // DMP_DMP_HPP_
