#ifndef DMP_SIM_HPP_
#define DMP_SIM_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "dmp/avoidance.hpp"
#include "dmp/dmp.hpp"
#include "dmp/obstacles.hpp"

namespace dmp {

/// One planar robot: its primitive, endpoints, and the ellipse semi-axes used
/// when the robot acts as an obstacle to the others.
struct RobotSpec {
    Dmp dmp;  // d = 2
    Eigen::Vector2d start;
    Eigen::Vector2d goal;
    Eigen::Vector2d footprint;
};

/**
 * @brief Multi-robot reactive scene.
 *
 * All robots share one canonical system (equal alpha and tau), so a single
 * phase drives every forcing term. Each robot perceives the static obstacles
 * through their configured methods and, when `mutual` is set, every other
 * robot as a moving ellipsoid centered at that robot's current position with
 * axes equal to the two footprints summed and velocity equal to that robot's
 * current velocity.
 */
struct Scene {
    std::vector<RobotSpec> robots;
    std::vector<std::pair<Superquadric, AvoidanceMethod>> static_obstacles;
    double dt = 1e-3;
    double horizon = 1.0;
    std::optional<DynamicVolumeParams> mutual;  // robot-to-robot gains
    double divergence_bound = 1e6;
};

/**
 * @brief Steps all robots on a common time grid (one trajectory per robot).
 *
 * Robots advance synchronously: within a step, every field evaluation reads
 * the previous step's states, and mutual contributions are summed in a
 * canonical robot order, so the result is independent of the robot order in
 * the scene. Throws NumericalError on divergence or when two robots'
 * mutual ellipsoid is penetrated (C <= 0), identifying the pair and time.
 */
std::vector<Trajectory> simulate(const Scene& scene);

enum class PaperSceneVariant { kNullWeights, kConstantSpeed };

/**
 * @brief The shipped three-robot benchmark scene.
 *
 * A 10 m x 6 m walled rectangle with three box obstacles; three robots on
 * crossing near-diagonal lines. Walls and boxes are pseudo-ellipsoids
 * (n = m = 2) inflated by the robot footprint and driven by dynamic
 * volumetric potentials; the robots repel each other with the mutual gains
 * lambda = 60, eta = 0.2, beta = 2. Robot DMPs use K = 3050, alpha = 4 and
 * either exactly zero weights or weights learned from a constant-speed
 * straight line, depending on the variant.
 */
Scene build_paper_scene(PaperSceneVariant variant);

}  // namespace dmp

#endif  // DMP_SIM_HPP_
