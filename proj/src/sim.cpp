#include "dmp/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "dmp/demos.hpp"
#include "dmp/errors.hpp"

namespace dmp {

namespace {

void validate_scene(const Scene& scene) {
    if (scene.robots.empty()) throw ValidationError("simulate: need at least one robot");
    if (!(scene.dt > 0.0)) throw ValidationError("simulate: dt must be positive");
    if (!(scene.horizon >= scene.dt)) throw ValidationError("simulate: horizon must be >= dt");
    const double tau = scene.robots.front().dmp.tau;
    const double alpha = scene.robots.front().dmp.alpha;
    for (const auto& robot : scene.robots) {
        robot.dmp.validate();
        if (robot.dmp.dims() != 2) throw ValidationError("simulate: robots must be planar (d = 2)");
        if (robot.dmp.tau != tau || robot.dmp.alpha != alpha) {
            throw ValidationError("simulate: robots must share one canonical system (tau, alpha)");
        }
        if (!(robot.footprint[0] > 0.0 && robot.footprint[1] > 0.0)) {
            throw ValidationError("simulate: robot footprints must be positive");
        }
        for (const auto& [sq, method] : scene.static_obstacles) {
            (void)method;
            if (isopotential(sq, robot.start) <= 0.0) {
                throw ValidationError("simulate: a robot starts inside a static obstacle");
            }
        }
    }
}

// The ellipsoid robot j presents to robot i: centered at j, axes grown by
// both footprints, moving with j.
Superquadric mutual_ellipse(const Eigen::Vector2d& center_j, const Eigen::Vector2d& velocity_j,
                            const Eigen::Vector2d& footprint_i, const Eigen::Vector2d& footprint_j) {
    Superquadric sq;
    sq.center = center_j;
    sq.axes = footprint_i + footprint_j;
    sq.velocity = velocity_j;
    return sq;
}

}  // namespace

std::vector<Trajectory> simulate(const Scene& scene) {
    validate_scene(scene);
    const std::size_t n_robots = scene.robots.size();
    const double dt = scene.dt;
    const long n_steps = std::max<long>(1, std::lround(scene.horizon / dt));
    const double tau = scene.robots.front().dmp.tau;
    const CanonicalSystem cs(scene.robots.front().dmp.alpha, tau);

    // Static obstacles act on every robot through one composed field, built
    // exactly as a standalone rollout would build it.
    std::vector<PerturbationField> static_fields(n_robots);
    if (!scene.static_obstacles.empty()) {
        std::vector<FieldTerm> terms;
        terms.reserve(scene.static_obstacles.size());
        for (const auto& [sq, method] : scene.static_obstacles) terms.push_back({method, sq});
        for (std::size_t i = 0; i < n_robots; ++i) static_fields[i] = compose_field(terms);
    }

    // Mutual contributions are summed in a scene-order-independent order so
    // permuting the robots permutes the outputs exactly.
    std::vector<std::size_t> canonical(n_robots);
    std::iota(canonical.begin(), canonical.end(), std::size_t{0});
    std::stable_sort(canonical.begin(), canonical.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = scene.robots[a];
        const auto& rb = scene.robots[b];
        const auto key = [](const RobotSpec& r) {
            return std::array<double, 4>{r.start[0], r.start[1], r.goal[0], r.goal[1]};
        };
        return key(ra) < key(rb);
    });

    std::vector<Eigen::VectorXd> x(n_robots), v(n_robots);
    for (std::size_t i = 0; i < n_robots; ++i) {
        x[i] = scene.robots[i].start;
        v[i] = Eigen::VectorXd::Zero(2);
    }

    std::vector<Trajectory> out(n_robots);
    for (auto& traj : out) {
        traj.times.resize(n_steps + 1);
        traj.positions.resize(n_steps + 1, 2);
        traj.velocities.resize(n_steps + 1, 2);
        traj.accelerations.resize(n_steps + 1, 2);
    }

    std::vector<Eigen::VectorXd> xdot(n_robots), vdot(n_robots);
    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double s = cs.phase_at(t);

        // Jacobi update: all perturbations read this step's committed states.
        for (std::size_t i = 0; i < n_robots; ++i) xdot[i] = v[i] / tau;
        for (std::size_t i = 0; i < n_robots; ++i) {
            const RobotSpec& robot = scene.robots[i];
            Eigen::VectorXd phi = Eigen::VectorXd::Zero(2);
            if (static_fields[i]) {
                try {
                    phi = static_fields[i](x[i], xdot[i], t);
                } catch (const NumericalError& err) {
                    throw NumericalError(std::string(err.what()) + " (robot " + std::to_string(i) +
                                         " at t=" + std::to_string(t) + ")");
                }
            }
            if (scene.mutual) {
                for (std::size_t j : canonical) {
                    if (j == i) continue;
                    const Superquadric sq = mutual_ellipse(x[j], xdot[j], robot.footprint,
                                                           scene.robots[j].footprint);
                    if (isopotential(sq, x[i]) <= 0.0) {
                        throw NumericalError("simulate: robots " + std::to_string(i) + " and " +
                                             std::to_string(j) +
                                             " penetrated their mutual ellipsoid at t=" +
                                             std::to_string(t));
                    }
                    phi += dynamic_volume_phi(x[i], xdot[i], sq, *scene.mutual);
                }
            }
            vdot[i] = detail::scaled_acceleration(robot.dmp, x[i], v[i], s, tau, robot.start,
                                                  robot.goal, phi);
        }

        for (std::size_t i = 0; i < n_robots; ++i) {
            out[i].times[k] = t;
            out[i].positions.row(k) = x[i];
            out[i].velocities.row(k) = xdot[i];
            out[i].accelerations.row(k) = vdot[i] / tau;
        }
        if (k < n_steps) {
            for (std::size_t i = 0; i < n_robots; ++i) {
                x[i] += dt * xdot[i];
                v[i] += dt * vdot[i];
                if (!x[i].allFinite() || x[i].norm() > scene.divergence_bound) {
                    throw NumericalError("simulate: robot " + std::to_string(i) +
                                         " diverged at t=" + std::to_string(t + dt));
                }
            }
        }
    }
    return out;
}

namespace {

Dmp null_weight_dmp(const Eigen::Vector2d& start, const Eigen::Vector2d& goal, double gain,
                    double alpha, double duration, int n_basis) {
    Eigen::VectorXd elastic = Eigen::VectorXd::Constant(2, gain);
    Eigen::VectorXd damping = 2.0 * elastic.array().sqrt();
    BasisSet basis = BasisSet::make(n_basis, alpha, duration);
    Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(2, basis.count());
    return Dmp{std::move(elastic), std::move(damping), duration, alpha,
               std::move(basis),   std::move(weights), start,    goal,
               duration};
}

Superquadric wall_or_box(const Eigen::Vector2d& center, const Eigen::Vector2d& half_extents,
                         const Eigen::Vector2d& inflation) {
    Superquadric sq = Superquadric::box2d(center, half_extents);
    return sq.inflated(inflation);
}

}  // namespace

Scene build_paper_scene(PaperSceneVariant variant) {
    const double gain = 3050.0;
    const double alpha = 4.0;
    const double duration = 20.0;
    const int n_basis = 50;
    const double dt = 1e-3;
    const Eigen::Vector2d footprint(0.6, 0.4);

    // Route A and C cross near (5, 3) at matched progress (the reactive
    // stress case); the other crossings are staggered in time.
    const std::array<std::pair<Eigen::Vector2d, Eigen::Vector2d>, 3> routes = {{
            {{1.0, 1.0}, {9.0, 5.0}},
            {{9.0, 3.2}, {1.0, 1.2}},
            {{3.6, 5.5}, {6.4, 0.7}},
    }};

    Scene scene;
    scene.dt = dt;
    scene.horizon = 1.5 * duration;
    scene.mutual = DynamicVolumeParams(60.0, 2.0, 0.2);

    const AvoidanceMethod static_method = DynamicVolumeParams(20.0, 2.0, 2.0);
    // Walls enclosing a 10 m x 6 m region, then three 0.8 m boxes on the
    // routes; everything inflated by the robot footprint.
    scene.static_obstacles = {
            {wall_or_box({5.0, -0.1}, {5.6, 0.1}, footprint), static_method},
            {wall_or_box({5.0, 6.1}, {5.6, 0.1}, footprint), static_method},
            {wall_or_box({-0.1, 3.0}, {0.1, 3.6}, footprint), static_method},
            {wall_or_box({10.1, 3.0}, {0.1, 3.6}, footprint), static_method},
            {wall_or_box({2.6, 1.6}, {0.4, 0.4}, footprint), static_method},
            {wall_or_box({7.4, 4.2}, {0.4, 0.4}, footprint), static_method},
            {wall_or_box({4.2, 4.6}, {0.4, 0.4}, footprint), static_method},
    };

    for (const auto& [start, goal] : routes) {
        RobotSpec robot{null_weight_dmp(start, goal, gain, alpha, duration, n_basis), start, goal,
                        footprint};
        if (variant == PaperSceneVariant::kConstantSpeed) {
            LearnOptions options = LearnOptions::with_gain(gain);
            options.alpha = alpha;
            options.n_basis = n_basis;
            robot.dmp = learn_from_demo(line_demo(start, goal, duration, dt), options);
        }
        scene.robots.push_back(std::move(robot));
    }
    return scene;
}

}  // namespace dmp
