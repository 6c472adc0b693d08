#include <doctest.h>

#include <cmath>
#include <random>

#include "dmp/demos.hpp"
#include "dmp/dmp.hpp"
#include "dmp/errors.hpp"
#include "support/oracles.hpp"

using namespace dmp;
using dmp_tests::unforced_solution;

namespace {

Dmp learn_spiral(int n_basis = 50) {
    LearnOptions options = LearnOptions::with_gain(1050.0);
    options.n_basis = n_basis;
    return learn_from_demo(spiral_demo(1.0, 1e-3), options);
}

}  // namespace

TEST_CASE("learn: an unforced demonstration yields (near-)zero weights") {
    // alpha = 20 makes both decay modes numerically dead by t = T, so the
    // demonstration truly ends at the equilibrium and f~ vanishes.
    Eigen::VectorXd start(2), goal(2);
    start << 0.2, -0.4;
    goal << 1.0, 0.8;
    const double gain = 1050.0;
    const double alpha = 20.0;
    const Trajectory demo = unforced_solution(start, goal, gain, alpha, 1.0, 1e-3);
    LearnOptions options = LearnOptions::with_gain(gain);
    options.alpha = alpha;
    options.n_basis = 30;
    const Dmp model = learn_from_demo(demo, options);
    CHECK(model.weights.cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("learn: endpoints, duration and critical damping are taken from the demo") {
    const Dmp model = learn_spiral();
    CHECK(model.start[0] == 0.0);
    CHECK(model.start[1] == 0.0);
    CHECK(model.goal[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(model.goal[1] == doctest::Approx(std::sin(M_PI)).epsilon(1e-9));
    CHECK(model.tau == 1.0);
    CHECK(model.demo_duration == 1.0);
    CHECK(model.damping[0] == doctest::Approx(2.0 * std::sqrt(1050.0)).epsilon(1e-14));
}

TEST_CASE("learn: rejects too-short demonstrations") {
    Trajectory demo;
    demo.times.resize(2);
    demo.times << 0.0, 1.0;
    demo.positions.setZero(2, 2);
    demo.velocities.setZero(2, 2);
    demo.accelerations.setZero(2, 2);
    CHECK_THROWS_AS(learn_from_demo(demo, LearnOptions::with_gain(100.0)), ValidationError);
}

TEST_CASE("learn: zero-duration demonstrations are rejected by validation") {
    Trajectory demo;
    demo.times.resize(3);
    demo.times << 0.0, 0.0, 0.0;
    demo.positions.setZero(3, 2);
    demo.velocities.setZero(3, 2);
    demo.accelerations.setZero(3, 2);
    CHECK_THROWS_AS(learn_from_demo(demo, LearnOptions::with_gain(100.0)), ValidationError);
}

TEST_CASE("learn: forcing round-trip through a rollout") {
    // Generate with known weights, relearn from the rollout, compare the
    // forcing functions at the demo phases. The generating goal is the fixed
    // point of the (affine-in-goal) end-position map, so the rollout ends at
    // its own goal and the relearned model sees matching endpoints.
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> w_dist(-0.15, 0.15);
    LearnOptions options = LearnOptions::with_gain(800.0);
    options.n_basis = 12;
    BasisSet basis = BasisSet::make(12, 4.0, 1.0);
    Eigen::MatrixXd weights(2, basis.count());
    for (Eigen::Index r = 0; r < weights.rows(); ++r) {
        for (Eigen::Index c = 0; c < weights.cols(); ++c) weights(r, c) = w_dist(rng);
    }
    Eigen::VectorXd elastic = Eigen::VectorXd::Constant(2, 800.0);
    Eigen::VectorXd damping = 2.0 * elastic.array().sqrt();
    Eigen::VectorXd start(2), goal(2);
    start << 0.0, 0.0;
    goal << 1.0, -0.5;
    Dmp original{elastic, damping, 1.0, 4.0, basis, weights, start, goal, 1.0};

    RolloutOptions roll;
    roll.horizon = 1.0;
    const auto end_of = [&](const Eigen::VectorXd& g) -> Eigen::VectorXd {
        original.goal = g;
        const Trajectory t = rollout(original, start, g, roll);
        return t.positions.row(t.samples() - 1);
    };
    const Eigen::VectorXd end0 = end_of(goal);
    const Eigen::VectorXd end1 = end_of(goal + Eigen::VectorXd::Constant(2, 0.1));
    const double slope = (end1[0] - end0[0]) / 0.1;  // same for every dimension
    const Eigen::VectorXd fixed_goal = (end0 - slope * goal) / (1.0 - slope);
    original.goal = fixed_goal;

    const Trajectory generated = rollout(original, start, fixed_goal, roll);
    REQUIRE((Eigen::VectorXd(generated.positions.row(generated.samples() - 1)) - fixed_goal)
                    .norm() <= 1e-10);
    const Dmp relearned = learn_from_demo(generated, options);

    double sq_sum = 0.0;
    const CanonicalSystem cs(4.0, 1.0);
    for (int k = 0; k < generated.samples(); ++k) {
        const double s = cs.phase_at(generated.times[k]);
        sq_sum += (original.forcing(s) - relearned.forcing(s)).squaredNorm();
    }
    const double rms = std::sqrt(sq_sum / generated.samples());
    CHECK(rms <= 1e-3);
}

TEST_CASE("rollout: unforced system converges to the goal") {
    Eigen::VectorXd elastic = Eigen::VectorXd::Constant(2, 1050.0);
    Eigen::VectorXd damping = 2.0 * elastic.array().sqrt();
    BasisSet basis = BasisSet::make(10, 4.0, 1.0);
    Eigen::VectorXd start(2), goal(2);
    start << 0.0, 0.0;
    goal << -1.0, 0.4;
    const Dmp model{elastic, damping, 1.0, 4.0, basis,
                    Eigen::MatrixXd::Zero(2, basis.count()), start, goal, 1.0};
    RolloutOptions options;
    options.horizon = 3.0;
    const Trajectory traj = rollout(model, start, goal, options);
    const Eigen::VectorXd end = traj.positions.row(traj.samples() - 1);
    CHECK((end - goal).norm() <= 1e-3);
}

TEST_CASE("rollout: learned spiral reproduces the demonstration") {
    const Dmp model = learn_spiral();
    RolloutOptions options;
    options.horizon = 1.0;
    const Trajectory traj = rollout(model, model.start, model.goal, options);
    const Trajectory demo = spiral_demo(1.0, 1e-3);
    // The rollout starts at rest while the demo has unit initial speed, so
    // the error carries an irreducible catch-up transient peaking at
    // |xd_demo(0)| / (sqrt(K) e) ~ 0.011 around t = 1/sqrt(K). Past it, the
    // reproduction is at the integration-error level.
    double max_err = 0.0, settled_err = 0.0;
    for (int k = 0; k < demo.samples(); ++k) {
        const double err = (Eigen::VectorXd(demo.positions.row(k)) -
                            Eigen::VectorXd(traj.positions.row(k)))
                                   .norm();
        max_err = std::max(max_err, err);
        if (demo.times[k] >= 0.2) settled_err = std::max(settled_err, err);
    }
    CHECK(max_err <= 1.2e-2);
    CHECK(settled_err <= 2e-3);
}

TEST_CASE("rollout: goal generalization lands on the new goal") {
    const Dmp model = learn_spiral();
    Eigen::VectorXd new_goal(2);
    new_goal << M_PI, 0.5;
    RolloutOptions options;
    options.horizon = 3.0;
    const Trajectory traj = rollout(model, model.start, new_goal, options);
    const Eigen::VectorXd end = traj.positions.row(traj.samples() - 1);
    CHECK((end - new_goal).norm() <= 1e-2);
}

TEST_CASE("rollout: goal convergence holds for any learned weights") {
    const Dmp model = learn_spiral();
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd start(2), goal(2);
        start << dist(rng), dist(rng);
        goal << dist(rng), dist(rng);
        RolloutOptions options;
        options.horizon = 3.0;
        const Trajectory traj = rollout(model, start, goal, options);
        const Eigen::VectorXd end = traj.positions.row(traj.samples() - 1);
        CHECK((end - goal).norm() <= 1e-2);
    }
}

TEST_CASE("rollout: fine-step self-oracle bounds the integration error") {
    const Dmp model = learn_spiral(20);
    RolloutOptions coarse;
    coarse.horizon = 1.0;
    coarse.dt = 1e-3;
    RolloutOptions fine = coarse;
    fine.dt = 1e-5;
    const Trajectory a = rollout(model, model.start, model.goal, coarse);
    const Trajectory b = rollout(model, model.start, model.goal, fine);
    double max_err = 0.0;
    for (int k = 0; k < a.samples(); ++k) {
        max_err = std::max(max_err, (Eigen::VectorXd(a.positions.row(k)) -
                                     b.position_at(a.times[k]))
                                            .norm());
    }
    CHECK(max_err <= 1e-2);
}

TEST_CASE("rollout: temporal scaling is exact under (2 tau, 2 dt)") {
    const Dmp model = learn_spiral(20);
    RolloutOptions base;
    base.horizon = 1.5;
    base.dt = 1e-3;
    RolloutOptions doubled;
    doubled.horizon = 3.0;
    doubled.dt = 2e-3;
    doubled.tau = 2.0 * model.tau;
    const Trajectory a = rollout(model, model.start, model.goal, base);
    const Trajectory b = rollout(model, model.start, model.goal, doubled);
    REQUIRE(a.samples() == b.samples());
    double max_err = 0.0;
    for (int k = 0; k < a.samples(); ++k) {
        CHECK(b.times[k] == 2.0 * a.times[k]);
        max_err = std::max(max_err, (Eigen::VectorXd(a.positions.row(k)) -
                                     Eigen::VectorXd(b.positions.row(k)))
                                            .cwiseAbs()
                                            .maxCoeff());
    }
    CHECK(max_err <= 1e-6 * static_cast<double>(a.samples()));
}

TEST_CASE("rollout: divergence is reported") {
    // Euler is unstable for dt well beyond 2 tau / D.
    Eigen::VectorXd elastic = Eigen::VectorXd::Constant(1, 1050.0);
    Eigen::VectorXd damping = 2.0 * elastic.array().sqrt();
    BasisSet basis = BasisSet::make(5, 4.0, 1.0);
    Eigen::VectorXd start(1), goal(1);
    start << 0.0;
    goal << 1.0;
    const Dmp model{elastic, damping, 1.0, 4.0, basis,
                    Eigen::MatrixXd::Zero(1, basis.count()), start, goal, 1.0};
    RolloutOptions options;
    options.dt = 0.2;
    options.horizon = 50.0;
    CHECK_THROWS_AS(rollout(model, start, goal, options), NumericalError);
}

TEST_CASE("rollout: perturbation field receives world-time velocity") {
    const Dmp model = learn_spiral(10);
    RolloutOptions options;
    options.horizon = 0.5;
    options.tau = 2.0;  // slow down; internal v differs from dx/dt by tau
    Eigen::MatrixXd seen_positions;
    std::vector<Eigen::VectorXd> seen_velocities;
    const PerturbationField probe = [&](const Eigen::VectorXd&, const Eigen::VectorXd& v,
                                        double) {
        seen_velocities.push_back(v);
        return Eigen::VectorXd::Zero(2);
    };
    const Trajectory traj = rollout(model, model.start, model.goal, options, probe);
    REQUIRE(static_cast<int>(seen_velocities.size()) == traj.samples());
    for (int k = 0; k < traj.samples(); ++k) {
        CHECK((seen_velocities[k] - Eigen::VectorXd(traj.velocities.row(k))).norm() == 0.0);
    }
}

TEST_CASE("trajectory: finite differences recover analytic derivatives") {
    const Trajectory demo = spiral_demo(1.0, 1e-3);
    const Trajectory filled = Trajectory::from_positions(demo.times, demo.positions);
    double vel_err = 0.0, acc_err = 0.0;
    for (int k = 2; k < demo.samples() - 2; ++k) {
        vel_err = std::max(vel_err, (Eigen::VectorXd(filled.velocities.row(k)) -
                                     Eigen::VectorXd(demo.velocities.row(k)))
                                            .norm());
        acc_err = std::max(acc_err, (Eigen::VectorXd(filled.accelerations.row(k)) -
                                     Eigen::VectorXd(demo.accelerations.row(k)))
                                            .norm());
    }
    CHECK(vel_err <= 1e-4);
    CHECK(acc_err <= 1e-2);
}

TEST_CASE("trajectory: validation rejects malformed inputs") {
    Trajectory traj;
    traj.times.resize(3);
    traj.times << 0.0, 0.5, 0.4;  // not increasing
    traj.positions.setZero(3, 1);
    traj.velocities.setZero(3, 1);
    traj.accelerations.setZero(3, 1);
    CHECK_THROWS_AS(traj.validate(), ValidationError);
    traj.times << 0.1, 0.5, 0.9;  // does not start at zero
    CHECK_THROWS_AS(traj.validate(), ValidationError);
}
