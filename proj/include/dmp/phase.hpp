#ifndef DMP_PHASE_HPP_
#define DMP_PHASE_HPP_

#include <cmath>

#include "dmp/errors.hpp"

namespace dmp {

/**
 * @brief Canonical system: reparametrizes time into the phase variable s.
 *
 * The phase obeys tau * ds/dt = -alpha * s with s(0) = 1, so
 * s(t) = exp(-alpha * t / tau). The closed form is used directly instead of
 * integrating the ODE, which keeps the phase exactly consistent with the
 * basis-center placement.
 */
class CanonicalSystem {
public:
    CanonicalSystem(double alpha, double tau) : alpha_(alpha), tau_(tau) {
        if (!(alpha > 0.0)) throw ValidationError("CanonicalSystem: alpha must be positive");
        if (!(tau > 0.0)) throw ValidationError("CanonicalSystem: tau must be positive");
    }

    /// Phase s(t) = exp(-alpha t / tau), strictly decreasing, in (0, 1].
    double phase_at(double t) const { return std::exp(-alpha_ * t / tau_); }

    double alpha() const { return alpha_; }
    double tau() const { return tau_; }

private:
    double alpha_;
    double tau_;
};

}  // namespace dmp

#endif  // DMP_PHASE_HPP_
