#include "dmp/obstacles.hpp"

#include <cmath>

#include "dmp/errors.hpp"

namespace dmp {

PointObstacle::PointObstacle(Eigen::VectorXd pos)
    : position(std::move(pos)), velocity(Eigen::VectorXd::Zero(position.size())) {
    if (!position.allFinite()) throw ValidationError("PointObstacle: position must be finite");
}

PointObstacle::PointObstacle(Eigen::VectorXd pos, Eigen::VectorXd vel)
    : position(std::move(pos)), velocity(std::move(vel)) {
    if (!position.allFinite() || !velocity.allFinite() || position.size() != velocity.size()) {
        throw ValidationError("PointObstacle: position/velocity must be finite and share dimension");
    }
}

Superquadric Superquadric::ellipse(const Eigen::Vector2d& center, const Eigen::Vector2d& semi_axes) {
    Superquadric sq;
    sq.center = center;
    sq.axes = semi_axes;
    sq.velocity = Eigen::VectorXd::Zero(2);
    sq.validate();
    return sq;
}

Superquadric Superquadric::ellipsoid(const Eigen::Vector3d& center, const Eigen::Vector3d& semi_axes) {
    Superquadric sq;
    sq.center = center;
    sq.axes = semi_axes;
    sq.velocity = Eigen::VectorXd::Zero(3);
    sq.validate();
    return sq;
}

Superquadric Superquadric::box2d(const Eigen::Vector2d& center, const Eigen::Vector2d& half_extents) {
    Superquadric sq = ellipse(center, half_extents);
    sq.planar_exponent = 2;
    sq.blend_exponent = 2;
    return sq;
}

void Superquadric::validate() const {
    const auto d = center.size();
    if (d != 2 && d != 3) throw ValidationError("Superquadric: only 2-D and 3-D supported");
    if (axes.size() != d) throw ValidationError("Superquadric: axes dimension mismatch");
    if (velocity.size() != 0 && velocity.size() != d) {
        throw ValidationError("Superquadric: velocity dimension mismatch");
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        if (!(axes[i] > 0.0)) throw ValidationError("Superquadric: axes must be positive");
    }
    if (planar_exponent < 1 || blend_exponent < 1 || third_exponent < 0) {
        throw ValidationError("Superquadric: exponents must be positive integers");
    }
}

Superquadric Superquadric::inflated(const Eigen::VectorXd& margins) const {
    if (margins.size() != axes.size()) {
        throw ValidationError("Superquadric: inflation margins dimension mismatch");
    }
    Superquadric out = *this;
    out.axes = axes + margins;
    out.validate();
    return out;
}

namespace {

double ipow(double base, int exponent) {
    double result = 1.0;
    for (int i = 0; i < exponent; ++i) result *= base;
    return result;
}

// P^(num/den) for nonnegative P; integer ratios stay in integer arithmetic.
double pow_ratio(double p, int num, int den) {
    if (num == 0) return 1.0;
    if (num % den == 0) return ipow(p, num / den);
    return std::pow(p, static_cast<double>(num) / static_cast<double>(den));
}

struct Frame {
    Eigen::VectorXd u;       // (x - center) / axes
    double planar_sum;       // u1^(2n) + u2^(2n)
    int n, m, p;
    bool three_d;
};

Frame make_frame(const Superquadric& sq, const Eigen::VectorXd& x) {
    sq.validate();
    if (x.size() != sq.center.size()) {
        throw ValidationError("Superquadric: query point dimension mismatch");
    }
    Frame f;
    f.u = (x - sq.center).cwiseQuotient(sq.axes);
    f.n = sq.planar_exponent;
    f.m = sq.blend_exponent;
    f.p = sq.axis3_exponent();
    f.three_d = x.size() == 3;
    f.planar_sum = ipow(f.u[0], 2 * f.n) + ipow(f.u[1], 2 * f.n);
    return f;
}

}  // namespace

double isopotential(const Superquadric& sq, const Eigen::VectorXd& x) {
    const Frame f = make_frame(sq, x);
    double c = pow_ratio(f.planar_sum, f.m, f.n) - 1.0;
    if (f.three_d) c += ipow(f.u[2], 2 * f.p);
    return c;
}

Eigen::VectorXd isopotential_gradient(const Superquadric& sq, const Eigen::VectorXd& x) {
    const Frame f = make_frame(sq, x);
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(x.size());
    if (f.planar_sum > 0.0) {
        const double outer = pow_ratio(f.planar_sum, f.m - f.n, f.n);
        for (int i = 0; i < 2; ++i) {
            grad[i] = 2.0 * f.m * outer * ipow(f.u[i], 2 * f.n - 1) / sq.axes[i];
        }
    }
    if (f.three_d) {
        grad[2] = 2.0 * f.p * ipow(f.u[2], 2 * f.p - 1) / sq.axes[2];
    }
    return grad;
}

namespace {

// Planar 2x2 Hessian block plus the decoupled third-axis entry:
//   H_ij = 4m(m-n) P^((m-2n)/n) u_i^(2n-1) u_j^(2n-1) / (l_i l_j)
//        + delta_ij 2m(2n-1) P^((m-n)/n) u_i^(2n-2) / l_i^2
//   H_33 = 2p(2p-1) u_3^(2p-2) / l_3^2
Eigen::MatrixXd isopotential_hessian(const Superquadric& sq, const Frame& f) {
    const auto d = f.u.size();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    if (f.planar_sum > 0.0) {
        const double diag_coeff = 2.0 * f.m * (2 * f.n - 1) * pow_ratio(f.planar_sum, f.m - f.n, f.n);
        for (int i = 0; i < 2; ++i) {
            h(i, i) = diag_coeff * ipow(f.u[i], 2 * f.n - 2) / (sq.axes[i] * sq.axes[i]);
        }
        if (f.m != f.n) {
            const double mix_coeff = 4.0 * f.m * (f.m - f.n) * pow_ratio(f.planar_sum, f.m - 2 * f.n, f.n);
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    h(i, j) += mix_coeff * ipow(f.u[i], 2 * f.n - 1) * ipow(f.u[j], 2 * f.n - 1) /
                               (sq.axes[i] * sq.axes[j]);
                }
            }
        }
    } else if (f.n == 1 && f.m == 1) {
        // Ellipsoid Hessian is constant; keep it exact at the center too.
        for (int i = 0; i < 2; ++i) h(i, i) = 2.0 / (sq.axes[i] * sq.axes[i]);
    }
    if (f.three_d) {
        h(2, 2) = 2.0 * f.p * (2 * f.p - 1) * ipow(f.u[2], 2 * f.p - 2) / (sq.axes[2] * sq.axes[2]);
    }
    return h;
}

}  // namespace

Eigen::VectorXd isopotential_hessian_times(const Superquadric& sq, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& v) {
    const Frame f = make_frame(sq, x);
    if (v.size() != x.size()) throw ValidationError("Superquadric: vector dimension mismatch");
    return isopotential_hessian(sq, f) * v;
}

Eigen::VectorXd grad_norm_gradient(const Superquadric& sq, const Eigen::VectorXd& x) {
    const Frame f = make_frame(sq, x);
    const Eigen::VectorXd grad = isopotential_gradient(sq, x);
    const double norm = grad.norm();
    if (norm < 1e-12) {
        throw NumericalError("Superquadric: gradient-norm gradient is singular (||grad C|| ~ 0)");
    }
    return isopotential_hessian(sq, f) * grad / norm;
}

std::vector<PointObstacle> discretize_boundary(const Superquadric& sq, int count) {
    sq.validate();
    if (sq.dims() != 2) throw ValidationError("discretize_boundary: only planar obstacles");
    if (count < 3) throw ValidationError("discretize_boundary: need at least three points");

    const double inv_n = 1.0 / static_cast<double>(sq.planar_exponent);
    std::vector<PointObstacle> points;
    points.reserve(count);
    const Eigen::VectorXd vel =
            sq.velocity.size() == 2 ? sq.velocity : Eigen::VectorXd::Zero(2);
    for (int k = 0; k < count; ++k) {
        const double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        // sign(c)|c|^(1/n), sign(s)|s|^(1/n) traces u1^(2n) + u2^(2n) = 1.
        Eigen::VectorXd p(2);
        p[0] = sq.center[0] + sq.axes[0] * std::copysign(std::pow(std::abs(c), inv_n), c);
        p[1] = sq.center[1] + sq.axes[1] * std::copysign(std::pow(std::abs(s), inv_n), s);
        points.emplace_back(p, vel);
    }
    return points;
}

}  // namespace dmp
