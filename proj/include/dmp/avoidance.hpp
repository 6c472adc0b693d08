#ifndef DMP_AVOIDANCE_HPP_
#define DMP_AVOIDANCE_HPP_

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "dmp/dmp.hpp"
#include "dmp/obstacles.hpp"

namespace dmp {

// Gains default to the values used by the planar benchmarks. All constructors
// validate positivity; the two dynamic potentials additionally require
// beta > 1 so the closed-form gradient (which carries (-cos)^(beta-1)) stays
// bounded at the branch switch.

/// Position-only point potential with a hard influence radius.
struct StaticPointParams {
    double eta;
    double influence_radius;  // p0: no effect beyond this distance
    explicit StaticPointParams(double eta = 1.0, double influence_radius = 0.1);
};

/// Velocity-dependent point potential, active only while approaching.
struct DynamicPointParams {
    double lambda;
    double beta;
    explicit DynamicPointParams(double lambda = 0.2, double beta = 2.0);
};

/// Rotates the velocity around the obstacle instead of pushing away from it.
/// Distance-independent; only defined in 2-D and 3-D.
struct SteeringAngleParams {
    double gamma;
    double beta;
    explicit SteeringAngleParams(double gamma = 20.0, double beta = 3.0);
};

/// Position-only volumetric potential over a superquadric isopotential.
struct StaticVolumeParams {
    double amplitude;  // A
    double eta;        // exponential decay rate in exp(-eta C)
    explicit StaticVolumeParams(double amplitude = 10.0, double eta = 1.0);
};

/// Velocity-dependent volumetric potential: vanishes when the system recedes
/// from or stops relative to the obstacle, decays as C^-eta with distance.
struct DynamicVolumeParams {
    double lambda;
    double beta;
    double eta;  // exponent on C; unrelated to StaticVolumeParams::eta
    bool debug_fd_cos_gradient = false;  // replace the analytic grad(cos) by
                                         // central differences (debug aid)
    explicit DynamicVolumeParams(double lambda = 10.0, double beta = 2.0, double eta = 0.5);
};

using AvoidanceMethod = std::variant<StaticPointParams, DynamicPointParams, SteeringAngleParams,
                                     StaticVolumeParams, DynamicVolumeParams>;

const char* method_name(const AvoidanceMethod& method);

// --- approach-angle helpers -------------------------------------------------
// All three use the relative velocity v - obstacle velocity and throw
// NumericalError on degenerate inputs (zero relative speed, zero distance or
// zero isopotential gradient).

/// cos(theta): angle between relative velocity and (x - o).
double point_approach_cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                             const PointObstacle& obs);

/// Steering angle: angle between (o - x) and the relative velocity, in [0, pi].
double steering_angle(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                      const PointObstacle& obs);

/// cos(theta): angle between grad C(x) and the relative velocity.
double volume_approach_cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                              const Superquadric& sq);

// --- potentials and perturbations -------------------------------------------
// Each phi is the exact negative gradient of its potential with respect to
// position, velocity held fixed. The potentials are exposed so callers can
// cross-check the gradients numerically.

double static_point_potential(const Eigen::VectorXd& x, const PointObstacle& obs,
                              const StaticPointParams& params);
Eigen::VectorXd static_point_phi(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                 const PointObstacle& obs, const StaticPointParams& params);

double dynamic_point_potential(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                               const PointObstacle& obs, const DynamicPointParams& params);
Eigen::VectorXd dynamic_point_phi(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                  const PointObstacle& obs, const DynamicPointParams& params);

Eigen::VectorXd steering_phi(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                             const PointObstacle& obs, const SteeringAngleParams& params);

double static_volume_potential(const Eigen::VectorXd& x, const Superquadric& sq,
                               const StaticVolumeParams& params);
Eigen::VectorXd static_volume_phi(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                  const Superquadric& sq, const StaticVolumeParams& params);

double dynamic_volume_potential(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                const Superquadric& sq, const DynamicVolumeParams& params);
Eigen::VectorXd dynamic_volume_phi(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                   const Superquadric& sq, const DynamicVolumeParams& params);

// --- composition -------------------------------------------------------------

/// One obstacle driven by one method. Point methods accept a PointObstacle or
/// a whole cloud (one perturbation term per point); volume methods require a
/// Superquadric.
struct FieldTerm {
    AvoidanceMethod method;
    std::variant<PointObstacle, std::vector<PointObstacle>, Superquadric> obstacle;
};

/// Evaluates a single method/obstacle pairing. Throws ValidationError on a
/// kind mismatch.
Eigen::VectorXd evaluate_phi(const AvoidanceMethod& method,
                             const std::variant<PointObstacle, std::vector<PointObstacle>,
                                                Superquadric>& obstacle,
                             const Eigen::VectorXd& x, const Eigen::VectorXd& v);

/// Sums the members' perturbations into one re-entrant field. Kind mismatches
/// are rejected here, before any rollout starts; numerical failures of any
/// member abort the evaluation with the term index in the message.
PerturbationField compose_field(std::vector<FieldTerm> terms);

}  // namespace dmp

#endif  // DMP_AVOIDANCE_HPP_
