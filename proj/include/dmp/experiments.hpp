#ifndef DMP_EXPERIMENTS_HPP_
#define DMP_EXPERIMENTS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dmp/avoidance.hpp"
#include "dmp/dmp.hpp"
#include "dmp/metrics.hpp"
#include "dmp/sim.hpp"

namespace dmp {

/// Hyper-parameters shared by learning and execution in the canned
/// experiments. Defaults reproduce the planar benchmarks (K = 1050, critical
/// damping, 50 basis functions, 1 ms steps).
struct DmpParams {
    double elastic = 1050.0;
    std::optional<double> damping;  // critical damping when unset
    double alpha = 4.0;
    int n_basis = 50;
    double dt = 1e-3;
    double horizon_factor = 1.5;  // rollout horizon = factor * demo duration

    LearnOptions learn_options() const;
};

/// Per-method gains for the five avoidance methods; defaults are the
/// benchmark table values.
struct MethodGains {
    StaticPointParams static_point{};
    DynamicPointParams dynamic_point{};
    SteeringAngleParams steering_angle{};
    StaticVolumeParams static_volume{};
    DynamicVolumeParams dynamic_volume{};
};

/// A planar benchmark: one demo, a set of volumetric obstacles, all five
/// methods run against them (point methods see the boundaries discretized
/// into `cloud_count` points each).
struct SyntheticSetup {
    DmpParams dmp;
    MethodGains gains;
    std::vector<Superquadric> obstacles;
    int cloud_count = 50;
    Trajectory demo;
};

struct MethodRun {
    std::string name;
    bool failed = false;
    std::string error;
    Trajectory trajectory;
    ComparisonReport report;
};

struct SyntheticResult {
    Trajectory reference;  // obstacle-free rollout of the learned model
    std::vector<MethodRun> methods;
};

/// Spiral demo against the ellipse at (-0.5, 0.7), semi-axes 0.3/0.2.
SyntheticSetup one_obstacle_setup();
/// Same plus the circle at (0.15, 0.4), radius 0.1.
SyntheticSetup two_obstacle_setup();

SyntheticResult run_synthetic_benchmark(const SyntheticSetup& setup);

struct MultirobotResult {
    std::vector<Trajectory> trajectories;
    std::vector<double> final_goal_errors;       // per robot
    std::vector<double> min_static_clearances;   // per robot, min over time
    double min_mutual_clearance;                 // min over time and pairs (+inf for < 2 robots)
};

MultirobotResult run_multirobot(const Scene& scene);

// --- experiment configs -------------------------------------------------------

enum class ExperimentKind { kOneObstacle, kTwoObstacle, kMultirobot, kCustom };

/// One obstacle bound to one method, for the custom experiment kind. Point
/// methods require `discretize` (boundary cloud size).
struct CustomFieldEntry {
    Superquadric obstacle;
    AvoidanceMethod method;
    std::optional<int> discretize;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::kOneObstacle;
    DmpParams dmp;
    MethodGains gains;
    std::vector<Superquadric> obstacle_override;  // sweep kinds: replaces geometry
    int cloud_count = 50;
    // demo source
    bool demo_from_file = false;
    std::string demo_path;
    double demo_duration = 1.0;
    double demo_dt = 1e-3;
    // custom kind
    std::vector<CustomFieldEntry> custom_field;
    // multirobot kind
    Scene scene = build_paper_scene(PaperSceneVariant::kNullWeights);
    std::string variant_name = "null-weights";
    // output
    bool timestamp = false;
};

/// Strict parser: unknown keys are fatal, gains are validated before any
/// computation. Throws ValidationError with the offending key path.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig read_experiment_config(const std::string& path);

/// Runs the configured experiment and writes trajectory CSVs, a report JSON
/// and an SVG overlay into `out_dir`. Returns the number of failed method
/// runs (0 on full success); per-method failures are recorded in the report
/// while the remaining methods still produce outputs.
int run_experiment(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace dmp

#endif  // DMP_EXPERIMENTS_HPP_
