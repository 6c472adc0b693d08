#ifndef DMP_OBSTACLES_HPP_
#define DMP_OBSTACLES_HPP_

#include <Eigen/Dense>
#include <vector>

namespace dmp {

/// A point obstacle with optional world-time velocity.
struct PointObstacle {
    Eigen::VectorXd position;
    Eigen::VectorXd velocity;  // zero when omitted

    explicit PointObstacle(Eigen::VectorXd pos);
    PointObstacle(Eigen::VectorXd pos, Eigen::VectorXd vel);
};

/**
 * @brief Generalized-ellipsoid obstacle with an implicit isopotential C(x).
 *
 * With u_i = (x_i - center_i) / axes_i and integer exponents n (planar) and
 * m (combining),
 *
 *   d = 2:  C(x) = (u1^(2n) + u2^(2n))^(m/n) - 1
 *   d = 3:  C(x) = (u1^(2n) + u2^(2n))^(m/n) + u3^(2p) - 1,
 *
 * where the third-axis exponent p defaults to m. C is -1 at the center,
 * zero on the surface, positive outside, and strictly increasing along rays
 * from the center. n = m = 1 gives ellipses/ellipsoids; n = m = 2 gives
 * box-like pseudo-ellipsoids; p = 2 with n = m = 1 approximates a cylinder
 * with axis along the third coordinate.
 *
 * The denominators are constant axis lengths; position-dependent shape
 * functions are not supported. For n != m the second derivatives are
 * singular on the third axis through the center (u1 = u2 = 0); evaluation
 * there drops the coupled term.
 */
struct Superquadric {
    Eigen::VectorXd center;
    Eigen::VectorXd axes;      // semi-axis lengths, positive
    int planar_exponent = 1;   // n
    int blend_exponent = 1;    // m
    int third_exponent = 0;    // p; 0 means "use m"
    Eigen::VectorXd velocity;  // world-time velocity of the obstacle

    static Superquadric ellipse(const Eigen::Vector2d& center, const Eigen::Vector2d& semi_axes);
    static Superquadric ellipsoid(const Eigen::Vector3d& center, const Eigen::Vector3d& semi_axes);
    /// Box-like pseudo-ellipsoid (n = m = 2) in two dimensions.
    static Superquadric box2d(const Eigen::Vector2d& center, const Eigen::Vector2d& half_extents);

    int dims() const { return static_cast<int>(center.size()); }
    int axis3_exponent() const { return third_exponent > 0 ? third_exponent : blend_exponent; }
    Eigen::VectorXd velocity_or_zero() const {
        return velocity.size() == center.size() ? velocity : Eigen::VectorXd::Zero(center.size());
    }
    void validate() const;

    /// Returns a copy with every semi-axis enlarged by the matching margin.
    Superquadric inflated(const Eigen::VectorXd& margins) const;
};

/// C(x): negative strictly inside, zero on the surface, positive outside.
double isopotential(const Superquadric& sq, const Eigen::VectorXd& x);

/// Analytic gradient of C. For n = m = 1 this is 2 (x_i - center_i) / axes_i^2.
Eigen::VectorXd isopotential_gradient(const Superquadric& sq, const Eigen::VectorXd& x);

/// Hessian of C times a fixed vector v, i.e. the gradient of <grad C(x), v>.
Eigen::VectorXd isopotential_hessian_times(const Superquadric& sq, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& v);

/// Gradient of ||grad C(x)||. Throws NumericalError when the gradient norm is
/// below 1e-12 (the center is a singular point).
Eigen::VectorXd grad_norm_gradient(const Superquadric& sq, const Eigen::VectorXd& x);

/// Samples the planar boundary (zero-level set) at `count` parameter-equally
/// spaced angles. Only defined for d = 2; each point inherits the obstacle's
/// velocity. Rejects count < 3.
std::vector<PointObstacle> discretize_boundary(const Superquadric& sq, int count);

}  // namespace dmp

#endif  // DMP_OBSTACLES_HPP_
