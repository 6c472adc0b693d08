#include "dmp/avoidance.hpp"

#include <cmath>
#include <string>

#include "dmp/errors.hpp"

namespace dmp {

namespace {

constexpr double kDegenerate = 1e-12;

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw ValidationError(std::string("avoidance: gain '") + name + "' must be positive");
    }
}

}  // namespace

StaticPointParams::StaticPointParams(double eta_, double influence_radius_)
    : eta(eta_), influence_radius(influence_radius_) {
    require_positive(eta, "eta");
    require_positive(influence_radius, "influence_radius");
}

DynamicPointParams::DynamicPointParams(double lambda_, double beta_) : lambda(lambda_), beta(beta_) {
    require_positive(lambda, "lambda");
    if (!(beta > 1.0)) throw ValidationError("avoidance: dynamic-point beta must exceed 1");
}

SteeringAngleParams::SteeringAngleParams(double gamma_, double beta_) : gamma(gamma_), beta(beta_) {
    require_positive(gamma, "gamma");
    require_positive(beta, "beta");
}

StaticVolumeParams::StaticVolumeParams(double amplitude_, double eta_)
    : amplitude(amplitude_), eta(eta_) {
    require_positive(amplitude, "amplitude");
    require_positive(eta, "eta");
}

DynamicVolumeParams::DynamicVolumeParams(double lambda_, double beta_, double eta_)
    : lambda(lambda_), beta(beta_), eta(eta_) {
    require_positive(lambda, "lambda");
    if (!(beta > 1.0)) throw ValidationError("avoidance: dynamic-volume beta must exceed 1");
    require_positive(eta, "eta");
}

const char* method_name(const AvoidanceMethod& method) {
    struct Visitor {
        const char* operator()(const StaticPointParams&) const { return "static_point"; }
        const char* operator()(const DynamicPointParams&) const { return "dynamic_point"; }
        const char* operator()(const SteeringAngleParams&) const { return "steering_angle"; }
        const char* operator()(const StaticVolumeParams&) const { return "static_volume"; }
        const char* operator()(const DynamicVolumeParams&) const { return "dynamic_volume"; }
    };
    return std::visit(Visitor{}, method);
}

double point_approach_cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                             const PointObstacle& obs) {
    const Eigen::VectorXd u = v - obs.velocity;
    const Eigen::VectorXd r = x - obs.position;
    const double nu = u.norm();
    const double p = r.norm();
    if (nu < kDegenerate || p < kDegenerate) {
        throw NumericalError("point_approach_cosine: degenerate geometry");
    }
    return u.dot(r) / (nu * p);
}

double steering_angle(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                      const PointObstacle& obs) {
    const Eigen::VectorXd u = v - obs.velocity;
    const Eigen::VectorXd r = obs.position - x;
    const double nu = u.norm();
    const double nr = r.norm();
    if (nu < kDegenerate || nr < kDegenerate) {
        throw NumericalError("steering_angle: degenerate geometry");
    }
    const double c = std::clamp(r.dot(u) / (nr * nu), -1.0, 1.0);
    return std::acos(c);
}

double volume_approach_cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                              const Superquadric& sq) {
    const Eigen::VectorXd u = v - sq.velocity_or_zero();
    const Eigen::VectorXd grad = isopotential_gradient(sq, x);
    const double nu = u.norm();
    const double ng = grad.norm();
    if (nu < kDegenerate || ng < kDegenerate) {
        throw NumericalError("volume_approach_cosine: degenerate geometry");
    }
    return grad.dot(u) / (ng * nu);
}

// --- static point ------------------------------------------------------------

double static_point_potential(const Eigen::VectorXd& x, const PointObstacle& obs,
                              const StaticPointParams& params) {
    const double p = (x - obs.position).norm();
    if (p < kDegenerate) throw NumericalError("static_point: at the obstacle (p ~ 0)");
    if (p > params.influence_radius) return 0.0;
    const double diff = 1.0 / p - 1.0 / params.influence_radius;
    return 0.5 * params.eta * diff * diff;
}

Eigen::VectorXd static_point_phi(const Eigen::VectorXd& x, const Eigen::VectorXd& /*v*/,
                                 const PointObstacle& obs, const StaticPointParams& params) {
    const Eigen::VectorXd r = x - obs.position;
    const double p = r.norm();
    if (p < kDegenerate) throw NumericalError("static_point: at the obstacle (p ~ 0)");
    if (p >= params.influence_radius) return Eigen::VectorXd::Zero(x.size());
    const double diff = 1.0 / p - 1.0 / params.influence_radius;
    return params.eta * diff / (p * p) * (r / p);
}

// --- dynamic point -----------------------------------------------------------

double dynamic_point_potential(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                               const PointObstacle& obs, const DynamicPointParams& params) {
    const Eigen::VectorXd u = v - obs.velocity;
    const double nu = u.norm();
    if (nu < kDegenerate) return 0.0;
    const Eigen::VectorXd r = x - obs.position;
    const double p = r.norm();
    if (p < kDegenerate) throw NumericalError("dynamic_point: at the obstacle (p ~ 0)");
    const double cos_theta = u.dot(r) / (nu * p);
    if (cos_theta >= 0.0) return 0.0;
    return params.lambda * std::pow(-cos_theta, params.beta) * nu / p;
}

Eigen::VectorXd dynamic_point_phi(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                  const PointObstacle& obs, const DynamicPointParams& params) {
    const Eigen::VectorXd u = v - obs.velocity;
    const double nu = u.norm();
    if (nu < kDegenerate) return Eigen::VectorXd::Zero(x.size());
    const Eigen::VectorXd r = x - obs.position;
    const double p = r.norm();
    if (p < kDegenerate) throw NumericalError("dynamic_point: at the obstacle (p ~ 0)");
    const double cos_theta = u.dot(r) / (nu * p);
    if (cos_theta >= 0.0) return Eigen::VectorXd::Zero(x.size());

    // grad cos = u/(|u| p) - <u,r> r / (|u| p^3); grad(1/p) = -r/p^3.
    const Eigen::VectorXd grad_cos = u / (nu * p) - u.dot(r) * r / (nu * p * p * p);
    const double pow_b1 = std::pow(-cos_theta, params.beta - 1.0);
    return params.lambda * nu *
           (params.beta * pow_b1 * grad_cos / p + pow_b1 * (-cos_theta) * r / (p * p * p));
}

// --- steering angle ----------------------------------------------------------

Eigen::VectorXd steering_phi(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                             const PointObstacle& obs, const SteeringAngleParams& params) {
    const auto d = x.size();
    if (d != 2 && d != 3) throw ValidationError("steering_phi: only defined in 2-D and 3-D");
    const Eigen::VectorXd u = v - obs.velocity;
    const double nu = u.norm();
    if (nu < kDegenerate) return Eigen::VectorXd::Zero(d);
    const Eigen::VectorXd r = obs.position - x;
    const double nr = r.norm();
    const double nv = v.norm();
    if (nr < kDegenerate) return Eigen::VectorXd::Zero(d);

    const double c = std::clamp(r.dot(u) / (nr * nu), -1.0, 1.0);
    const double angle = std::acos(c);

    // Rotation of v by pi/2 about the axis r x v; undefined (and zero by the
    // degeneracy rule) when r and v are parallel.
    Eigen::VectorXd rotated(d);
    if (d == 2) {
        const double cross = r[0] * v[1] - r[1] * v[0];
        if (std::abs(cross) <= kDegenerate * nr * nv) return Eigen::VectorXd::Zero(d);
        if (cross > 0.0) {
            rotated << -v[1], v[0];
        } else {
            rotated << v[1], -v[0];
        }
    } else {
        const Eigen::Vector3d axis = Eigen::Vector3d(r).cross(Eigen::Vector3d(v));
        const double na = axis.norm();
        if (na <= kDegenerate * nr * nv) return Eigen::VectorXd::Zero(d);
        rotated = (axis / na).cross(Eigen::Vector3d(v));  // axis is orthogonal to v
    }
    return params.gamma * angle * std::exp(-params.beta * angle) * rotated;
}

// --- static volume -----------------------------------------------------------

double static_volume_potential(const Eigen::VectorXd& x, const Superquadric& sq,
                               const StaticVolumeParams& params) {
    const double c = isopotential(sq, x);
    if (c <= 0.0) throw NumericalError("static_volume: evaluated inside the obstacle (C <= 0)");
    return params.amplitude * std::exp(-params.eta * c) / c;
}

Eigen::VectorXd static_volume_phi(const Eigen::VectorXd& x, const Eigen::VectorXd& /*v*/,
                                  const Superquadric& sq, const StaticVolumeParams& params) {
    const double c = isopotential(sq, x);
    if (c <= 0.0) throw NumericalError("static_volume: evaluated inside the obstacle (C <= 0)");
    const double scale =
            params.amplitude * std::exp(-params.eta * c) * (params.eta * c + 1.0) / (c * c);
    return scale * isopotential_gradient(sq, x);
}

// --- dynamic volume ----------------------------------------------------------

double dynamic_volume_potential(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                const Superquadric& sq, const DynamicVolumeParams& params) {
    const double c = isopotential(sq, x);
    if (c <= 0.0) throw NumericalError("dynamic_volume: evaluated inside the obstacle (C <= 0)");
    const Eigen::VectorXd u = v - sq.velocity_or_zero();
    const double nu = u.norm();
    if (nu < kDegenerate) return 0.0;
    const Eigen::VectorXd grad = isopotential_gradient(sq, x);
    const double ng = grad.norm();
    if (ng < kDegenerate) throw NumericalError("dynamic_volume: singular point (||grad C|| ~ 0)");
    const double cos_theta = grad.dot(u) / (ng * nu);
    if (cos_theta >= 0.0) return 0.0;
    return params.lambda * std::pow(-cos_theta, params.beta) * nu / std::pow(c, params.eta);
}

Eigen::VectorXd dynamic_volume_phi(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                   const Superquadric& sq, const DynamicVolumeParams& params) {
    const double c = isopotential(sq, x);
    if (c <= 0.0) throw NumericalError("dynamic_volume: evaluated inside the obstacle (C <= 0)");
    const Eigen::VectorXd u = v - sq.velocity_or_zero();
    const double nu = u.norm();
    if (nu < kDegenerate) return Eigen::VectorXd::Zero(x.size());
    const Eigen::VectorXd grad = isopotential_gradient(sq, x);
    const double ng = grad.norm();
    if (ng < kDegenerate) throw NumericalError("dynamic_volume: singular point (||grad C|| ~ 0)");
    const double cos_theta = grad.dot(u) / (ng * nu);
    if (cos_theta >= 0.0) return Eigen::VectorXd::Zero(x.size());

    Eigen::VectorXd grad_cos(x.size());
    if (params.debug_fd_cos_gradient) {
        const double h = 1e-7 * sq.axes.minCoeff();
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            Eigen::VectorXd hi = x, lo = x;
            hi[i] += h;
            lo[i] -= h;
            grad_cos[i] = (volume_approach_cosine(hi, v, sq) - volume_approach_cosine(lo, v, sq)) /
                          (2.0 * h);
        }
    } else {
        // grad cos = (|g| H u - <g,u> grad|g|) / (|u| |g|^2), H the Hessian of C.
        const Eigen::VectorXd hess_u = isopotential_hessian_times(sq, x, u);
        const Eigen::VectorXd gng = grad_norm_gradient(sq, x);
        grad_cos = (ng * hess_u - grad.dot(u) * gng) / (nu * ng * ng);
    }

    const double front = params.lambda * nu * std::pow(-cos_theta, params.beta - 1.0) /
                         std::pow(c, params.eta);
    return -front * (-params.beta * grad_cos + (params.eta * cos_theta / c) * grad);
}

// --- composition -------------------------------------------------------------

namespace {

using ObstacleSpec = std::variant<PointObstacle, std::vector<PointObstacle>, Superquadric>;

struct PhiVisitor {
    const Eigen::VectorXd& x;
    const Eigen::VectorXd& v;
    const ObstacleSpec& obstacle;

    Eigen::VectorXd point_sum(const auto& eval) const {
        if (const auto* single = std::get_if<PointObstacle>(&obstacle)) return eval(*single);
        if (const auto* cloud = std::get_if<std::vector<PointObstacle>>(&obstacle)) {
            Eigen::VectorXd sum = Eigen::VectorXd::Zero(x.size());
            for (const auto& p : *cloud) sum += eval(p);
            return sum;
        }
        throw ValidationError("compose_field: point method paired with a volumetric obstacle");
    }

    const Superquadric& volume() const {
        if (const auto* sq = std::get_if<Superquadric>(&obstacle)) return *sq;
        throw ValidationError("compose_field: volume method paired with a point obstacle");
    }

    Eigen::VectorXd operator()(const StaticPointParams& p) const {
        return point_sum([&](const PointObstacle& o) { return static_point_phi(x, v, o, p); });
    }
    Eigen::VectorXd operator()(const DynamicPointParams& p) const {
        return point_sum([&](const PointObstacle& o) { return dynamic_point_phi(x, v, o, p); });
    }
    Eigen::VectorXd operator()(const SteeringAngleParams& p) const {
        return point_sum([&](const PointObstacle& o) { return steering_phi(x, v, o, p); });
    }
    Eigen::VectorXd operator()(const StaticVolumeParams& p) const {
        return static_volume_phi(x, v, volume(), p);
    }
    Eigen::VectorXd operator()(const DynamicVolumeParams& p) const {
        return dynamic_volume_phi(x, v, volume(), p);
    }
};

void check_kinds(const FieldTerm& term) {
    const bool is_point_method = std::holds_alternative<StaticPointParams>(term.method) ||
                                 std::holds_alternative<DynamicPointParams>(term.method) ||
                                 std::holds_alternative<SteeringAngleParams>(term.method);
    const bool has_volume = std::holds_alternative<Superquadric>(term.obstacle);
    if (is_point_method && has_volume) {
        throw ValidationError("compose_field: point method paired with a volumetric obstacle");
    }
    if (!is_point_method && !has_volume) {
        throw ValidationError("compose_field: volume method paired with a point obstacle");
    }
}

}  // namespace

Eigen::VectorXd evaluate_phi(const AvoidanceMethod& method, const ObstacleSpec& obstacle,
                             const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return std::visit(PhiVisitor{x, v, obstacle}, method);
}

PerturbationField compose_field(std::vector<FieldTerm> terms) {
    if (terms.empty()) throw ValidationError("compose_field: need at least one term");
    for (const auto& term : terms) check_kinds(term);

    return [terms = std::move(terms)](const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                      double /*t*/) {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(x.size());
        for (std::size_t i = 0; i < terms.size(); ++i) {
            try {
                sum += evaluate_phi(terms[i].method, terms[i].obstacle, x, v);
            } catch (const NumericalError& err) {
                throw NumericalError(std::string(err.what()) + " [field term #" +
                                     std::to_string(i) + ", " + method_name(terms[i].method) + "]");
            }
        }
        return sum;
    };
}

}  // namespace dmp
