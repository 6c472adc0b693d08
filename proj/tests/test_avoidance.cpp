#include <doctest.h>

#include <cmath>
#include <random>

#include "dmp/avoidance.hpp"
#include "dmp/errors.hpp"
#include "support/oracles.hpp"

using namespace dmp;
using dmp_tests::fd_gradient;
using dmp_tests::random_rotation;
using dmp_tests::random_unit;
using dmp_tests::relative_error;

namespace {

PointObstacle origin_point(int dims) {
    return PointObstacle(Eigen::VectorXd::Zero(dims));
}

// Approach state toward a point obstacle: position in the influence band,
// velocity with a clear closing component.
struct PointState {
    Eigen::VectorXd x;
    Eigen::VectorXd v;
};

PointState approach_point_state(std::mt19937& rng, int dims, double min_radius, double max_radius) {
    std::uniform_real_distribution<double> radius(min_radius, max_radius);
    std::uniform_real_distribution<double> speed(0.2, 2.0);
    while (true) {
        const Eigen::VectorXd dir = random_unit(rng, dims);
        const Eigen::VectorXd x = dir * radius(rng);
        Eigen::VectorXd v = random_unit(rng, dims) * speed(rng);
        const double cos_theta = v.dot(x) / (v.norm() * x.norm());
        if (cos_theta < -0.15 && cos_theta > -0.95) return {x, v};
    }
}

Superquadric test_ellipse() {
    return Superquadric::ellipse({-0.5, 0.7}, {0.3, 0.2});
}

// Exterior state approaching a superquadric, away from the branch boundary.
PointState approach_volume_state(std::mt19937& rng, const Superquadric& sq) {
    std::uniform_real_distribution<double> spread(-3.0, 3.0);
    std::uniform_real_distribution<double> speed(0.2, 2.0);
    while (true) {
        Eigen::VectorXd x(sq.dims());
        for (int i = 0; i < sq.dims(); ++i) x[i] = sq.center[i] + spread(rng) * sq.axes[i];
        const double c = isopotential(sq, x);
        if (c < 0.4 || c > 4.0) continue;
        const Eigen::VectorXd grad = isopotential_gradient(sq, x);
        Eigen::VectorXd v = random_unit(rng, sq.dims()) * speed(rng);
        const double cos_theta = grad.dot(v) / (grad.norm() * v.norm());
        if (cos_theta < -0.15 && cos_theta > -0.95) return {x, v};
    }
}

}  // namespace

TEST_CASE("params: gains are validated at construction") {
    CHECK_THROWS_AS(StaticPointParams(-1.0, 0.1), ValidationError);
    CHECK_THROWS_AS(StaticPointParams(1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(DynamicPointParams(0.2, 1.0), ValidationError);  // beta must exceed 1
    CHECK_THROWS_AS(DynamicVolumeParams(10.0, 0.5, 1.0), ValidationError);
    CHECK_THROWS_AS(SteeringAngleParams(0.0, 3.0), ValidationError);
    CHECK_THROWS_AS(StaticVolumeParams(10.0, -2.0), ValidationError);
}

TEST_CASE("static point: zero at and beyond the influence radius") {
    const StaticPointParams params(1.0, 0.1);
    const PointObstacle obs = origin_point(2);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd x(2);
    x << 0.2, 0.0;  // p > p0
    CHECK(static_point_phi(x, v, obs, params).norm() == 0.0);
    CHECK(static_point_potential(x, obs, params) == 0.0);
    x << 0.1, 0.0;  // p == p0 exactly
    CHECK(static_point_phi(x, v, obs, params).norm() == 0.0);
}

TEST_CASE("static point: matches the negative potential gradient") {
    const StaticPointParams params(1.0, 0.1);
    const PointObstacle obs = origin_point(2);
    const Eigen::VectorXd v = Eigen::VectorXd::Zero(2);
    const auto potential = [&](const Eigen::VectorXd& q) {
        return static_point_potential(q, obs, params);
    };

    Eigen::VectorXd x(2);
    x << 0.05, 0.0;
    CHECK(relative_error(static_point_phi(x, v, obs, params), -fd_gradient(potential, x, 1e-8)) <=
          1e-6);

    std::mt19937 rng(50);
    for (int trial = 0; trial < 100; ++trial) {
        const PointState state = approach_point_state(rng, 2, 0.02, 0.085);
        CHECK(relative_error(static_point_phi(state.x, state.v, obs, params),
                             -fd_gradient(potential, state.x, 1e-8)) <= 1e-5);
    }
}

TEST_CASE("static point: singularity at the obstacle is an error") {
    const StaticPointParams params;
    const PointObstacle obs = origin_point(2);
    const Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
    CHECK_THROWS_AS(static_point_phi(x, x, obs, params), NumericalError);
}

TEST_CASE("dynamic point: gates on relative velocity and approach angle") {
    const DynamicPointParams params(0.2, 2.0);
    Eigen::VectorXd x(2), v(2), o_vel(2);
    x << 0.3, 0.1;
    v << 0.4, -0.2;
    o_vel = v;  // zero relative velocity
    const PointObstacle moving(Eigen::VectorXd::Zero(2), o_vel);
    CHECK(dynamic_point_phi(x, v, moving, params).norm() == 0.0);
    CHECK(dynamic_point_potential(x, v, moving, params) == 0.0);

    const PointObstacle still = origin_point(2);
    const Eigen::VectorXd receding = x;  // moving directly away: cos theta = 1
    CHECK(dynamic_point_phi(x, receding, still, params).norm() == 0.0);
    // theta = pi/2 exactly: second branch, still zero.
    Eigen::VectorXd tangent(2);
    tangent << -x[1], x[0];
    CHECK(dynamic_point_phi(x, tangent, still, params).norm() == 0.0);
}

TEST_CASE("dynamic point: matches the negative potential gradient") {
    const DynamicPointParams params(0.2, 2.0);
    std::mt19937 rng(51);
    for (int dims : {2, 3}) {
        const PointObstacle obs = origin_point(dims);
        for (int trial = 0; trial < 100; ++trial) {
            const PointState state = approach_point_state(rng, dims, 0.2, 1.5);
            const auto potential = [&](const Eigen::VectorXd& q) {
                return dynamic_point_potential(q, state.v, obs, params);
            };
            CHECK(relative_error(dynamic_point_phi(state.x, state.v, obs, params),
                                 -fd_gradient(potential, state.x, 1e-6)) <= 1e-5);
        }
    }
}

TEST_CASE("dynamic point: obstacle velocity enters as relative velocity") {
    const DynamicPointParams params(0.2, 2.0);
    std::mt19937 rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        const PointState state = approach_point_state(rng, 2, 0.3, 1.0);
        Eigen::VectorXd o_vel(2);
        o_vel << 0.3, -0.1;
        const PointObstacle moving(Eigen::VectorXd::Zero(2), o_vel);
        const PointObstacle still = origin_point(2);
        const Eigen::VectorXd shifted = state.v + o_vel;
        CHECK((dynamic_point_phi(state.x, shifted, moving, params) -
               dynamic_point_phi(state.x, state.v, still, params))
                      .norm() <= 1e-14);
    }
}

TEST_CASE("steering: degenerate geometries return zero") {
    const SteeringAngleParams params(20.0, 3.0);
    const PointObstacle obs = origin_point(2);
    Eigen::VectorXd x(2), v(2);
    x << -0.4, 0.0;
    v << 0.0, 0.0;
    CHECK(steering_phi(x, v, obs, params).norm() == 0.0);  // zero relative velocity
    v << 0.7, 0.0;                                         // (o - x) parallel to v
    CHECK(steering_phi(x, v, obs, params).norm() == 0.0);
    // moving obstacle with matching velocity
    const PointObstacle moving(Eigen::VectorXd::Zero(2), v);
    CHECK(steering_phi(x, v, moving, params).norm() == 0.0);
}

TEST_CASE("steering: rotates the velocity away from the obstacle line") {
    const SteeringAngleParams params(20.0, 3.0);
    const PointObstacle obs(Eigen::Vector2d(1.0, 0.0));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd v(2);
    v << 1.0, 0.1;
    const Eigen::VectorXd phi_up = steering_phi(x, v, obs, params);
    CHECK(phi_up[1] > 0.0);  // deflects further from the obstacle direction
    CHECK(std::abs(phi_up.dot(v)) <= 1e-12 * phi_up.norm() * v.norm());  // perpendicular

    v << 1.0, -0.1;  // mirrored approach deflects the other way
    const Eigen::VectorXd phi_down = steering_phi(x, v, obs, params);
    CHECK(phi_down[1] < 0.0);

    // magnitude gamma |v| theta exp(-beta theta)
    const double angle = steering_angle(x, v, obs);
    CHECK(phi_down.norm() ==
          doctest::Approx(params.gamma * v.norm() * angle * std::exp(-params.beta * angle))
                  .epsilon(1e-12));
}

TEST_CASE("steering: 3-D reduction agrees with the planar case") {
    const SteeringAngleParams params(20.0, 3.0);
    std::mt19937 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        const PointState planar = approach_point_state(rng, 2, 0.3, 1.2);
        const PointObstacle obs2 = origin_point(2);
        const Eigen::VectorXd phi2 = steering_phi(planar.x, planar.v, obs2, params);

        Eigen::VectorXd x3 = Eigen::VectorXd::Zero(3), v3 = Eigen::VectorXd::Zero(3);
        x3.head(2) = planar.x;
        v3.head(2) = planar.v;
        const Eigen::VectorXd phi3 = steering_phi(x3, v3, origin_point(3), params);
        CHECK((phi3.head(2) - phi2).norm() <= 1e-12 * std::max(1.0, phi2.norm()));
        CHECK(std::abs(phi3[2]) <= 1e-12);
    }
}

TEST_CASE("steering: rejects unsupported dimensions") {
    const SteeringAngleParams params;
    const PointObstacle obs = origin_point(4);
    const Eigen::VectorXd x = Eigen::VectorXd::Ones(4);
    CHECK_THROWS_AS(steering_phi(x, x, obs, params), ValidationError);
}

TEST_CASE("static volume: gradient oracle and outward direction") {
    const StaticVolumeParams params(10.0, 1.0);
    std::mt19937 rng(54);

    const Superquadric ellipse = test_ellipse();
    const auto potential = [&](const Eigen::VectorXd& q) {
        return static_volume_potential(q, ellipse, params);
    };
    for (int trial = 0; trial < 100; ++trial) {
        const PointState state = approach_volume_state(rng, ellipse);
        CHECK(relative_error(static_volume_phi(state.x, state.v, ellipse, params),
                             -fd_gradient(potential, state.x, 1e-6)) <= 1e-5);
    }

    const Superquadric sphere = Superquadric::ellipsoid({0.0, 0.0, 0.0}, {0.5, 0.5, 0.5});
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::VectorXd dir = random_unit(rng, 3);
        const Eigen::VectorXd x = dir * 1.2;
        const Eigen::VectorXd phi =
                static_volume_phi(x, Eigen::VectorXd::Zero(3), sphere, params);
        CHECK(phi.dot(dir) > 0.0);
        CHECK((phi - phi.dot(dir) * dir).norm() <= 1e-12 * phi.norm());
    }
}

TEST_CASE("static volume: repulsion decays monotonically along exterior rays") {
    const StaticVolumeParams params(10.0, 1.0);
    const Superquadric ellipse = test_ellipse();
    const Eigen::VectorXd dir = Eigen::Vector2d(1.0, 0.4).normalized();
    double prev_u = std::numeric_limits<double>::infinity();
    double prev_phi = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 30; ++k) {
        const Eigen::VectorXd x =
                Eigen::Vector2d(ellipse.center) + dir * (0.45 + 0.1 * static_cast<double>(k));
        const double u = static_volume_potential(x, ellipse, params);
        const double phi = static_volume_phi(x, Eigen::VectorXd::Zero(2), ellipse, params).norm();
        CHECK(u < prev_u);
        CHECK(phi < prev_phi);
        prev_u = u;
        prev_phi = phi;
    }
}

TEST_CASE("static volume: inside the obstacle is an error") {
    const StaticVolumeParams params;
    const Superquadric ellipse = test_ellipse();
    CHECK_THROWS_AS(static_volume_potential(ellipse.center, ellipse, params), NumericalError);
    CHECK_THROWS_AS(
            static_volume_phi(ellipse.center, Eigen::VectorXd::Zero(2), ellipse, params),
            NumericalError);
}

TEST_CASE("dynamic volume: gating on relative velocity and recession") {
    const DynamicVolumeParams params(10.0, 2.0, 0.5);
    const Superquadric ellipse = test_ellipse();
    Eigen::VectorXd x(2);
    x << 0.2, 0.7;  // outside, to the right
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2);
    CHECK(dynamic_volume_phi(x, v, ellipse, params).norm() == 0.0);  // not moving

    v << 1.0, 0.0;  // moving away from the obstacle (along +grad C)
    CHECK(dynamic_volume_phi(x, v, ellipse, params).norm() == 0.0);
    CHECK(dynamic_volume_potential(x, v, ellipse, params) == 0.0);

    Superquadric moving = ellipse;
    moving.velocity = Eigen::Vector2d(-0.5, 0.2);
    CHECK(dynamic_volume_phi(x, moving.velocity, moving, params).norm() == 0.0);  // v = o-dot
}

TEST_CASE("dynamic volume: gradient oracle on ellipses and pseudo-ellipsoids") {
    const DynamicVolumeParams params(10.0, 2.0, 0.5);
    std::mt19937 rng(55);

    std::vector<Superquadric> shapes;
    shapes.push_back(test_ellipse());
    Superquadric box = test_ellipse();
    box.planar_exponent = 2;
    box.blend_exponent = 2;
    shapes.push_back(box);
    shapes.push_back(Superquadric::ellipsoid({0.1, -0.2, 0.4}, {0.6, 0.4, 0.9}));

    for (const auto& sq : shapes) {
        for (int trial = 0; trial < 100; ++trial) {
            const PointState state = approach_volume_state(rng, sq);
            const auto potential = [&](const Eigen::VectorXd& q) {
                return dynamic_volume_potential(q, state.v, sq, params);
            };
            CHECK(relative_error(dynamic_volume_phi(state.x, state.v, sq, params),
                                 -fd_gradient(potential, state.x, 1e-6)) <= 1e-5);
        }
    }
}

TEST_CASE("dynamic volume: analytic grad(cos) agrees with the debug FD switch") {
    DynamicVolumeParams params(10.0, 2.0, 0.5);
    DynamicVolumeParams fd_params = params;
    fd_params.debug_fd_cos_gradient = true;
    std::mt19937 rng(56);
    const Superquadric sq = test_ellipse();
    for (int trial = 0; trial < 20; ++trial) {
        const PointState state = approach_volume_state(rng, sq);
        CHECK(relative_error(dynamic_volume_phi(state.x, state.v, sq, fd_params),
                             dynamic_volume_phi(state.x, state.v, sq, params)) <= 1e-6);
    }
}

TEST_CASE("dynamic volume: inside-obstacle and singular-point errors") {
    const DynamicVolumeParams params;
    const Superquadric ellipse = test_ellipse();
    Eigen::VectorXd v(2);
    v << 1.0, 0.0;
    CHECK_THROWS_AS(dynamic_volume_phi(ellipse.center, v, ellipse, params), NumericalError);
}

TEST_CASE("P1: dynamic potentials decrease along exterior rays at fixed approach") {
    // Radial ray on a sphere with head-on velocity keeps cos theta fixed.
    const Superquadric sphere = Superquadric::ellipsoid({0.0, 0.0, 0.0}, {0.4, 0.4, 0.4});
    const PointObstacle point = origin_point(3);
    const DynamicVolumeParams vol(10.0, 2.0, 0.5);
    const DynamicPointParams pt(0.2, 2.0);
    std::mt19937 rng(57);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXd dir = random_unit(rng, 3);
        const Eigen::VectorXd v = -dir * 1.3;
        double prev_vol = std::numeric_limits<double>::infinity();
        double prev_pt = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= 25; ++k) {
            const Eigen::VectorXd x = dir * (0.5 + 0.1 * static_cast<double>(k));
            const double u_vol = dynamic_volume_potential(x, v, sphere, vol);
            const double u_pt = dynamic_point_potential(x, v, point, pt);
            CHECK(u_vol < prev_vol);
            CHECK(u_pt < prev_pt);
            CHECK(u_vol > 0.0);
            CHECK(u_pt > 0.0);
            prev_vol = u_vol;
            prev_pt = u_pt;
        }
    }
}

TEST_CASE("P2: dynamic potentials scale linearly with speed") {
    const DynamicVolumeParams vol(10.0, 2.0, 0.5);
    const DynamicPointParams pt(0.2, 2.0);
    const Superquadric ellipse = test_ellipse();
    const PointObstacle point = origin_point(2);
    std::mt19937 rng(58);
    for (int trial = 0; trial < 25; ++trial) {
        const PointState vol_state = approach_volume_state(rng, ellipse);
        const PointState pt_state = approach_point_state(rng, 2, 0.2, 1.2);
        for (double k : {0.5, 2.0, 10.0}) {
            CHECK(dynamic_volume_potential(vol_state.x, k * vol_state.v, ellipse, vol) ==
                  doctest::Approx(k * dynamic_volume_potential(vol_state.x, vol_state.v, ellipse,
                                                               vol))
                          .epsilon(1e-12));
            CHECK(dynamic_point_potential(pt_state.x, k * pt_state.v, point, pt) ==
                  doctest::Approx(k * dynamic_point_potential(pt_state.x, pt_state.v, point, pt))
                          .epsilon(1e-12));
            // phi scales identically.
            CHECK((dynamic_volume_phi(vol_state.x, k * vol_state.v, ellipse, vol) -
                   k * dynamic_volume_phi(vol_state.x, vol_state.v, ellipse, vol))
                          .norm() <= 1e-12 * k);
        }
    }
}

TEST_CASE("P3: potentials decrease as the approach angle opens") {
    // Fixed position and speed on a sphere; sweep the velocity direction from
    // head-on to tangent.
    const Superquadric sphere = Superquadric::ellipsoid({0.0, 0.0, 0.0}, {0.4, 0.4, 0.4});
    const PointObstacle point = origin_point(3);
    const DynamicVolumeParams vol(10.0, 2.0, 0.5);
    const DynamicPointParams pt(0.2, 2.0);
    Eigen::VectorXd x(3);
    x << 0.9, 0.0, 0.0;
    double prev_vol = std::numeric_limits<double>::infinity();
    double prev_pt = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 12; ++k) {
        const double psi = 0.12 * static_cast<double>(k);  // angle away from head-on
        Eigen::VectorXd v(3);
        v << -std::cos(psi), std::sin(psi), 0.0;
        const double u_vol = dynamic_volume_potential(x, v, sphere, vol);
        const double u_pt = dynamic_point_potential(x, v, point, pt);
        CHECK(u_vol <= prev_vol);
        CHECK(u_pt <= prev_pt);
        prev_vol = u_vol;
        prev_pt = u_pt;
    }
}

TEST_CASE("angle conventions: the two cosines are opposite for still obstacles") {
    std::mt19937 rng(59);
    for (int dims : {2, 3}) {
        const PointObstacle obs = origin_point(dims);
        for (int trial = 0; trial < 100; ++trial) {
            const PointState state = approach_point_state(rng, dims, 0.2, 1.5);
            const double cos_theta = point_approach_cosine(state.x, state.v, obs);
            const double steering = steering_angle(state.x, state.v, obs);
            CHECK(cos_theta == doctest::Approx(-std::cos(steering)).epsilon(1e-12));
        }
    }
}

TEST_CASE("rotational equivariance around spherical obstacles") {
    std::mt19937 rng(60);
    const StaticPointParams sp(1.0, 1.0);
    const DynamicPointParams dp(0.2, 2.0);
    const SteeringAngleParams sa(20.0, 3.0);
    const StaticVolumeParams sv(10.0, 1.0);
    const DynamicVolumeParams dv(10.0, 2.0, 0.5);
    for (int dims : {2, 3}) {
        const PointObstacle point = origin_point(dims);
        Superquadric sphere;
        sphere.center = Eigen::VectorXd::Zero(dims);
        sphere.axes = Eigen::VectorXd::Constant(dims, 0.4);
        sphere.velocity = Eigen::VectorXd::Zero(dims);
        for (int trial = 0; trial < 30; ++trial) {
            const PointState state = approach_point_state(rng, dims, 0.6, 0.95);
            const Eigen::MatrixXd q = random_rotation(rng, dims);
            const Eigen::VectorXd qx = q * state.x;
            const Eigen::VectorXd qv = q * state.v;

            const auto check_equivariant = [&](const Eigen::VectorXd& phi,
                                               const Eigen::VectorXd& phi_rotated) {
                CHECK((phi_rotated - q * phi).norm() <= 1e-10 * std::max(1.0, phi.norm()));
            };
            check_equivariant(static_point_phi(state.x, state.v, point, sp),
                              static_point_phi(qx, qv, point, sp));
            check_equivariant(dynamic_point_phi(state.x, state.v, point, dp),
                              dynamic_point_phi(qx, qv, point, dp));
            check_equivariant(steering_phi(state.x, state.v, point, sa),
                              steering_phi(qx, qv, point, sa));
            check_equivariant(static_volume_phi(state.x, state.v, sphere, sv),
                              static_volume_phi(qx, qv, sphere, sv));
            check_equivariant(dynamic_volume_phi(state.x, state.v, sphere, dv),
                              dynamic_volume_phi(qx, qv, sphere, dv));
        }
    }
}

TEST_CASE("compose: additivity and cloud flattening") {
    const Superquadric ellipse = test_ellipse();
    const Superquadric circle = Superquadric::ellipse({0.15, 0.4}, {0.1, 0.1});
    const DynamicVolumeParams dv(10.0, 2.0, 0.5);
    const StaticPointParams sp(1.0, 0.5);

    const PerturbationField both = compose_field({{dv, ellipse}, {dv, circle}});
    const PerturbationField first = compose_field({{dv, ellipse}});
    const PerturbationField second = compose_field({{dv, circle}});

    std::mt19937 rng(61);
    for (int trial = 0; trial < 25; ++trial) {
        PointState state = approach_volume_state(rng, ellipse);
        if (isopotential(circle, state.x) <= 0.0) continue;
        const Eigen::VectorXd sum =
                first(state.x, state.v, 0.0) + second(state.x, state.v, 0.0);
        CHECK((both(state.x, state.v, 0.0) - sum).norm() == 0.0);
    }

    const auto cloud = discretize_boundary(circle, 12);
    const PerturbationField cloud_field = compose_field({{sp, cloud}});
    Eigen::VectorXd x(2), v(2);
    x << 0.4, 0.4;
    v << -1.0, 0.0;
    Eigen::VectorXd manual = Eigen::VectorXd::Zero(2);
    for (const auto& p : cloud) manual += static_point_phi(x, v, p, sp);
    CHECK((cloud_field(x, v, 0.0) - manual).norm() == 0.0);
}

TEST_CASE("compose: gated members sum to exactly zero") {
    const DynamicVolumeParams dv(10.0, 2.0, 0.5);
    const Superquadric ellipse = test_ellipse();
    const Superquadric circle = Superquadric::ellipse({0.15, 0.4}, {0.1, 0.1});
    const PerturbationField field = compose_field({{dv, ellipse}, {dv, circle}});
    Eigen::VectorXd x(2), v(2);
    x << 2.0, 2.0;
    v << 1.0, 1.0;  // receding from both
    CHECK(field(x, v, 0.0).norm() == 0.0);
}

TEST_CASE("compose: kind mismatches and empty lists are rejected") {
    const Superquadric ellipse = test_ellipse();
    const StaticPointParams sp;
    const DynamicVolumeParams dv;
    CHECK_THROWS_AS(compose_field({}), ValidationError);
    CHECK_THROWS_AS(compose_field({{sp, ellipse}}), ValidationError);
    CHECK_THROWS_AS(compose_field({{dv, origin_point(2)}}), ValidationError);
}

TEST_CASE("compose: member errors carry the term index") {
    const DynamicVolumeParams dv;
    const Superquadric ellipse = test_ellipse();
    const PerturbationField field = compose_field({{dv, ellipse}});
    Eigen::VectorXd v(2);
    v << 1.0, 0.0;
    try {
        field(ellipse.center, v, 0.0);
        FAIL("expected NumericalError");
    } catch (const NumericalError& err) {
        CHECK(std::string(err.what()).find("term #0") != std::string::npos);
    }
}
