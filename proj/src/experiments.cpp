#include "dmp/experiments.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dmp/csv.hpp"
#include "dmp/demos.hpp"
#include "dmp/errors.hpp"
#include "dmp/svg.hpp"

namespace dmp {

LearnOptions DmpParams::learn_options() const {
    LearnOptions options = LearnOptions::with_gain(elastic);
    if (damping) options.damping = Eigen::VectorXd::Constant(1, *damping);
    options.alpha = alpha;
    options.n_basis = n_basis;
    return options;
}

namespace {

Superquadric benchmark_ellipse() {
    return Superquadric::ellipse({-0.5, 0.7}, {0.3, 0.2});
}

Superquadric benchmark_circle() {
    return Superquadric::ellipse({0.15, 0.4}, {0.1, 0.1});
}

std::vector<ClearanceObstacle> clearance_list(const std::vector<Superquadric>& obstacles) {
    std::vector<ClearanceObstacle> list;
    list.reserve(obstacles.size());
    for (const auto& sq : obstacles) list.emplace_back(sq);
    return list;
}

}  // namespace

SyntheticSetup one_obstacle_setup() {
    SyntheticSetup setup;
    setup.obstacles = {benchmark_ellipse()};
    setup.demo = spiral_demo(1.0, setup.dmp.dt);
    return setup;
}

SyntheticSetup two_obstacle_setup() {
    SyntheticSetup setup = one_obstacle_setup();
    setup.obstacles.push_back(benchmark_circle());
    return setup;
}

SyntheticResult run_synthetic_benchmark(const SyntheticSetup& setup) {
    const Dmp model = learn_from_demo(setup.demo, setup.dmp.learn_options());
    RolloutOptions rollout_options;
    rollout_options.dt = setup.dmp.dt;
    rollout_options.horizon = setup.dmp.horizon_factor * model.demo_duration;

    SyntheticResult result;
    result.reference = rollout(model, model.start, model.goal, rollout_options);

    std::vector<std::vector<PointObstacle>> clouds;
    clouds.reserve(setup.obstacles.size());
    for (const auto& sq : setup.obstacles) {
        clouds.push_back(discretize_boundary(sq, setup.cloud_count));
    }

    const std::vector<std::pair<std::string, AvoidanceMethod>> methods = {
            {"static_point", setup.gains.static_point},
            {"dynamic_point", setup.gains.dynamic_point},
            {"steering_angle", setup.gains.steering_angle},
            {"static_volume", setup.gains.static_volume},
            {"dynamic_volume", setup.gains.dynamic_volume},
    };
    const bool is_point_method[5] = {true, true, true, false, false};
    const auto scoring = clearance_list(setup.obstacles);

    for (std::size_t i = 0; i < methods.size(); ++i) {
        MethodRun run;
        run.name = methods[i].first;
        std::vector<FieldTerm> terms;
        for (std::size_t o = 0; o < setup.obstacles.size(); ++o) {
            if (is_point_method[i]) {
                terms.push_back({methods[i].second, clouds[o]});
            } else {
                terms.push_back({methods[i].second, setup.obstacles[o]});
            }
        }
        try {
            run.trajectory = rollout(model, model.start, model.goal, rollout_options,
                                     compose_field(std::move(terms)));
            run.report = compare(result.reference, run.trajectory, scoring);
        } catch (const NumericalError& err) {
            run.failed = true;
            run.error = err.what();
        }
        result.methods.push_back(std::move(run));
    }
    return result;
}

MultirobotResult run_multirobot(const Scene& scene) {
    MultirobotResult result;
    result.trajectories = simulate(scene);
    const std::size_t n = scene.robots.size();

    for (std::size_t i = 0; i < n; ++i) {
        const Trajectory& traj = result.trajectories[i];
        const Eigen::Vector2d end = traj.positions.row(traj.samples() - 1);
        result.final_goal_errors.push_back((end - scene.robots[i].goal).norm());

        double clearance = std::numeric_limits<double>::infinity();
        for (int k = 0; k < traj.samples(); ++k) {
            const Eigen::VectorXd x = traj.positions.row(k);
            for (const auto& [sq, method] : scene.static_obstacles) {
                (void)method;
                clearance = std::min(clearance, isopotential(sq, x));
            }
        }
        result.min_static_clearances.push_back(clearance);
    }

    double mutual = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Superquadric sq;
            sq.axes = scene.robots[i].footprint + scene.robots[j].footprint;
            sq.center = Eigen::VectorXd::Zero(2);
            const auto& ti = result.trajectories[i];
            const auto& tj = result.trajectories[j];
            for (int k = 0; k < ti.samples(); ++k) {
                sq.center = tj.positions.row(k);
                mutual = std::min(mutual, isopotential(sq, Eigen::VectorXd(ti.positions.row(k))));
            }
        }
    }
    result.min_mutual_clearance = mutual;
    return result;
}

// --- config parsing -----------------------------------------------------------

namespace {

using Json = nlohmann::json;

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key)) {
            throw ValidationError("config: unknown key '" + key + "' in " + where);
        }
    }
}

double number_at(const Json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ValidationError("config: '" + key + "' must be a number");
    return j.at(key).get<double>();
}

int int_at(const Json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) {
        throw ValidationError("config: '" + key + "' must be an integer");
    }
    return j.at(key).get<int>();
}

Eigen::VectorXd vector_at(const Json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw ValidationError("config: '" + key + "' must be an array of numbers");
    }
    const Json& arr = j.at(key);
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) {
            throw ValidationError("config: '" + key + "' must be an array of numbers");
        }
        v[i] = arr[i].get<double>();
    }
    return v;
}

Superquadric superquadric_from(const Json& j, const std::string& where) {
    check_keys(j, {"center", "axes", "exponents", "velocity"}, where);
    Superquadric sq;
    sq.center = vector_at(j, "center");
    sq.axes = vector_at(j, "axes");
    if (j.contains("exponents")) {
        const Json& e = j.at("exponents");
        if (!e.is_array() || e.size() < 2 || e.size() > 3) {
            throw ValidationError("config: 'exponents' must list [n, m] or [n, m, p] in " + where);
        }
        sq.planar_exponent = e[0].get<int>();
        sq.blend_exponent = e[1].get<int>();
        if (e.size() == 3) sq.third_exponent = e[2].get<int>();
    }
    sq.velocity = j.contains("velocity") ? vector_at(j, "velocity")
                                         : Eigen::VectorXd::Zero(sq.center.size());
    sq.validate();
    return sq;
}

AvoidanceMethod method_from(const std::string& name, const Json& gains, const std::string& where) {
    if (name == "static_point") {
        check_keys(gains, {"eta", "influence_radius"}, where);
        return StaticPointParams(number_at(gains, "eta", 1.0),
                                 number_at(gains, "influence_radius", 0.1));
    }
    if (name == "dynamic_point") {
        check_keys(gains, {"lambda", "beta"}, where);
        return DynamicPointParams(number_at(gains, "lambda", 0.2), number_at(gains, "beta", 2.0));
    }
    if (name == "steering_angle") {
        check_keys(gains, {"gamma", "beta"}, where);
        return SteeringAngleParams(number_at(gains, "gamma", 20.0), number_at(gains, "beta", 3.0));
    }
    if (name == "static_volume") {
        check_keys(gains, {"amplitude", "eta"}, where);
        return StaticVolumeParams(number_at(gains, "amplitude", 10.0),
                                  number_at(gains, "eta", 1.0));
    }
    if (name == "dynamic_volume") {
        check_keys(gains, {"lambda", "beta", "eta"}, where);
        return DynamicVolumeParams(number_at(gains, "lambda", 10.0), number_at(gains, "beta", 2.0),
                                   number_at(gains, "eta", 0.5));
    }
    throw ValidationError("config: unknown method '" + name + "' in " + where);
}

void parse_dmp_params(const Json& j, DmpParams& params) {
    check_keys(j, {"elastic", "damping", "alpha", "n_basis", "dt", "horizon_factor"}, "'dmp'");
    params.elastic = number_at(j, "elastic", params.elastic);
    if (j.contains("damping")) params.damping = number_at(j, "damping", 0.0);
    params.alpha = number_at(j, "alpha", params.alpha);
    params.n_basis = int_at(j, "n_basis", params.n_basis);
    params.dt = number_at(j, "dt", params.dt);
    params.horizon_factor = number_at(j, "horizon_factor", params.horizon_factor);
    if (!(params.elastic > 0.0)) throw ValidationError("config: 'elastic' must be positive");
    if (params.damping && !(*params.damping > 0.0)) {
        throw ValidationError("config: 'damping' must be positive");
    }
    if (!(params.alpha > 0.0) || !(params.dt > 0.0) || !(params.horizon_factor > 0.0)) {
        throw ValidationError("config: 'alpha', 'dt' and 'horizon_factor' must be positive");
    }
}

void parse_gains(const Json& j, MethodGains& gains) {
    check_keys(j, {"static_point", "dynamic_point", "steering_angle", "static_volume",
                  "dynamic_volume"},
               "'gains'");
    const auto apply = [&](const char* name, auto& slot) {
        using ParamType = std::decay_t<decltype(slot)>;
        if (j.contains(name)) {
            slot = std::get<ParamType>(method_from(name, j.at(name), std::string("'gains.") + name + "'"));
        }
    };
    apply("static_point", gains.static_point);
    apply("dynamic_point", gains.dynamic_point);
    apply("steering_angle", gains.steering_angle);
    apply("static_volume", gains.static_volume);
    apply("dynamic_volume", gains.dynamic_volume);
}

void parse_multirobot(const Json& j, ExperimentConfig& config) {
    check_keys(j,
               {"variant", "duration", "horizon", "elastic", "damping", "alpha", "n_basis", "dt",
                "footprint", "mutual", "static_method", "robots", "walls", "boxes"},
               "'multirobot'");

    std::string variant = "null-weights";
    if (j.contains("variant")) variant = j.at("variant").get<std::string>();
    if (variant != "null-weights" && variant != "constant-speed") {
        throw ValidationError("config: 'multirobot.variant' must be null-weights or constant-speed");
    }
    config.variant_name = variant;

    // Start from the shipped scene, then override the requested pieces.
    const double duration = number_at(j, "duration", 12.0);
    const double gain = number_at(j, "elastic", 3050.0);
    const double alpha = number_at(j, "alpha", 4.0);
    const int n_basis = int_at(j, "n_basis", 50);
    const double dt = number_at(j, "dt", 1e-3);
    if (!(duration > 0.0) || !(gain > 0.0) || !(alpha > 0.0) || !(dt > 0.0)) {
        throw ValidationError("config: multirobot scalars must be positive");
    }
    std::optional<double> damping;
    if (j.contains("damping")) {
        damping = number_at(j, "damping", 0.0);
        if (!(*damping > 0.0)) throw ValidationError("config: 'multirobot.damping' must be positive");
    }

    Eigen::Vector2d footprint(0.6, 0.4);
    if (j.contains("footprint")) {
        const Eigen::VectorXd f = vector_at(j, "footprint");
        if (f.size() != 2 || !(f[0] > 0.0) || !(f[1] > 0.0)) {
            throw ValidationError("config: 'multirobot.footprint' must be two positive numbers");
        }
        footprint = f;
    }

    Scene scene;
    scene.dt = dt;
    scene.horizon = number_at(j, "horizon", 1.5 * duration);
    scene.mutual = DynamicVolumeParams(60.0, 2.0, 0.2);
    if (j.contains("mutual")) {
        scene.mutual = std::get<DynamicVolumeParams>(
                method_from("dynamic_volume", j.at("mutual"), "'multirobot.mutual'"));
    }

    AvoidanceMethod static_method = DynamicVolumeParams(60.0, 2.0, 2.0);
    if (j.contains("static_method")) {
        const Json& sm = j.at("static_method");
        check_keys(sm, {"method", "gains"}, "'multirobot.static_method'");
        if (!sm.contains("method")) {
            throw ValidationError("config: 'multirobot.static_method.method' is required");
        }
        static_method = method_from(sm.at("method").get<std::string>(),
                                    sm.contains("gains") ? sm.at("gains") : Json::object(),
                                    "'multirobot.static_method'");
        if (std::holds_alternative<StaticPointParams>(static_method) ||
            std::holds_alternative<DynamicPointParams>(static_method) ||
            std::holds_alternative<SteeringAngleParams>(static_method)) {
            throw ValidationError("config: multirobot static obstacles need a volume method");
        }
    }

    // Walls and boxes; defaults match the shipped scene.
    double arena_w = 10.0, arena_h = 6.0, thickness = 0.2;
    if (j.contains("walls")) {
        const Json& w = j.at("walls");
        check_keys(w, {"width", "height", "thickness"}, "'multirobot.walls'");
        arena_w = number_at(w, "width", arena_w);
        arena_h = number_at(w, "height", arena_h);
        thickness = number_at(w, "thickness", thickness);
    }
    const double half_t = thickness / 2.0;
    const auto add_box = [&](const Eigen::Vector2d& center, const Eigen::Vector2d& half_extents) {
        Superquadric sq = Superquadric::box2d(center, half_extents).inflated(footprint);
        scene.static_obstacles.emplace_back(sq, static_method);
    };
    // Walls overlap at the corners (same construction as build_paper_scene).
    add_box({arena_w / 2.0, -half_t}, {arena_w / 2.0 + 3.0 * thickness, half_t});
    add_box({arena_w / 2.0, arena_h + half_t}, {arena_w / 2.0 + 3.0 * thickness, half_t});
    add_box({-half_t, arena_h / 2.0}, {half_t, arena_h / 2.0 + 3.0 * thickness});
    add_box({arena_w + half_t, arena_h / 2.0}, {half_t, arena_h / 2.0 + 3.0 * thickness});

    if (j.contains("boxes")) {
        for (std::size_t b = 0; b < j.at("boxes").size(); ++b) {
            const Json& box = j.at("boxes")[b];
            check_keys(box, {"center", "half_extent"}, "'multirobot.boxes'");
            const Eigen::VectorXd center = vector_at(box, "center");
            const double half = number_at(box, "half_extent", 0.4);
            if (center.size() != 2 || !(half > 0.0)) {
                throw ValidationError("config: each box needs a planar center and positive half_extent");
            }
            add_box(center, {half, half});
        }
    } else {
        add_box({3.0, 2.0}, {0.4, 0.4});
        add_box({7.0, 4.0}, {0.4, 0.4});
        add_box({5.5, 2.75}, {0.4, 0.4});
    }

    std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>> routes = {
            {{1.0, 1.2}, {9.0, 4.8}},
            {{9.0, 1.0}, {1.0, 5.0}},
            {{5.2, 5.4}, {4.6, 0.6}},
    };
    if (j.contains("robots")) {
        routes.clear();
        for (std::size_t r = 0; r < j.at("robots").size(); ++r) {
            const Json& robot = j.at("robots")[r];
            check_keys(robot, {"start", "goal"}, "'multirobot.robots'");
            const Eigen::VectorXd start = vector_at(robot, "start");
            const Eigen::VectorXd goal = vector_at(robot, "goal");
            if (start.size() != 2 || goal.size() != 2) {
                throw ValidationError("config: robot start/goal must be planar");
            }
            routes.emplace_back(start, goal);
        }
        if (routes.empty()) throw ValidationError("config: 'multirobot.robots' must be nonempty");
    }

    for (const auto& [start, goal] : routes) {
        const auto make_dmp = [&]() -> Dmp {
            if (variant == "constant-speed") {
                LearnOptions options = LearnOptions::with_gain(gain);
                if (damping) options.damping = Eigen::VectorXd::Constant(1, *damping);
                options.alpha = alpha;
                options.n_basis = n_basis;
                return learn_from_demo(line_demo(start, goal, duration, dt), options);
            }
            Eigen::VectorXd elastic = Eigen::VectorXd::Constant(2, gain);
            Eigen::VectorXd damping_vec =
                    damping ? Eigen::VectorXd::Constant(2, *damping)
                            : Eigen::VectorXd(2.0 * elastic.array().sqrt());
            BasisSet basis = BasisSet::make(n_basis, alpha, duration);
            return Dmp{std::move(elastic),
                       std::move(damping_vec),
                       duration,
                       alpha,
                       std::move(basis),
                       Eigen::MatrixXd::Zero(2, n_basis + 1),
                       start,
                       goal,
                       duration};
        };
        scene.robots.push_back(RobotSpec{make_dmp(), start, goal, footprint});
    }
    config.scene = std::move(scene);
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const nlohmann::json::exception& err) {
        throw ValidationError(std::string("config: invalid JSON: ") + err.what());
    }
    if (!j.is_object()) throw ValidationError("config: top level must be an object");
    check_keys(j,
               {"experiment", "dmp", "gains", "demo", "obstacles", "cloud_count", "custom_field",
                "multirobot", "output"},
               "the top level");

    ExperimentConfig config;
    if (!j.contains("experiment")) throw ValidationError("config: 'experiment' is required");
    const std::string kind = j.at("experiment").get<std::string>();
    if (kind == "one-obstacle") {
        config.kind = ExperimentKind::kOneObstacle;
    } else if (kind == "two-obstacle") {
        config.kind = ExperimentKind::kTwoObstacle;
    } else if (kind == "multirobot") {
        config.kind = ExperimentKind::kMultirobot;
    } else if (kind == "custom") {
        config.kind = ExperimentKind::kCustom;
    } else {
        throw ValidationError("config: unknown experiment kind '" + kind + "'");
    }

    if (j.contains("dmp")) parse_dmp_params(j.at("dmp"), config.dmp);
    if (j.contains("gains")) parse_gains(j.at("gains"), config.gains);
    config.cloud_count = int_at(j, "cloud_count", config.cloud_count);
    if (config.cloud_count < 3) throw ValidationError("config: 'cloud_count' must be >= 3");

    if (j.contains("demo")) {
        const Json& demo = j.at("demo");
        check_keys(demo, {"source", "duration", "dt", "path"}, "'demo'");
        const std::string source =
                demo.contains("source") ? demo.at("source").get<std::string>() : "spiral";
        if (source == "spiral") {
            config.demo_duration = number_at(demo, "duration", 1.0);
            config.demo_dt = number_at(demo, "dt", config.dmp.dt);
        } else if (source == "file") {
            config.demo_from_file = true;
            if (!demo.contains("path")) throw ValidationError("config: 'demo.path' is required");
            config.demo_path = demo.at("path").get<std::string>();
        } else {
            throw ValidationError("config: 'demo.source' must be spiral or file");
        }
    } else {
        config.demo_dt = config.dmp.dt;
    }

    if (j.contains("obstacles")) {
        if (config.kind == ExperimentKind::kMultirobot || config.kind == ExperimentKind::kCustom) {
            throw ValidationError("config: 'obstacles' only applies to the sweep experiments");
        }
        for (std::size_t i = 0; i < j.at("obstacles").size(); ++i) {
            config.obstacle_override.push_back(
                    superquadric_from(j.at("obstacles")[i], "'obstacles'"));
        }
        if (config.obstacle_override.empty()) {
            throw ValidationError("config: 'obstacles' must be nonempty when present");
        }
    }

    if (j.contains("custom_field")) {
        if (config.kind != ExperimentKind::kCustom) {
            throw ValidationError("config: 'custom_field' requires the custom experiment");
        }
        for (std::size_t i = 0; i < j.at("custom_field").size(); ++i) {
            const Json& entry = j.at("custom_field")[i];
            check_keys(entry, {"method", "gains", "obstacle", "discretize"}, "'custom_field'");
            if (!entry.contains("method") || !entry.contains("obstacle")) {
                throw ValidationError("config: custom_field entries need 'method' and 'obstacle'");
            }
            CustomFieldEntry parsed{
                    superquadric_from(entry.at("obstacle"), "'custom_field.obstacle'"),
                    method_from(entry.at("method").get<std::string>(),
                                entry.contains("gains") ? entry.at("gains") : Json::object(),
                                "'custom_field'"),
                    std::nullopt};
            if (entry.contains("discretize")) parsed.discretize = entry.at("discretize").get<int>();
            const bool is_point = !std::holds_alternative<StaticVolumeParams>(parsed.method) &&
                                  !std::holds_alternative<DynamicVolumeParams>(parsed.method);
            if (is_point && !parsed.discretize) {
                throw ValidationError("config: point methods in custom_field need 'discretize'");
            }
            if (parsed.discretize && *parsed.discretize < 3) {
                throw ValidationError("config: 'discretize' must be >= 3");
            }
            config.custom_field.push_back(std::move(parsed));
        }
        if (config.custom_field.empty()) {
            throw ValidationError("config: 'custom_field' must be nonempty");
        }
    } else if (config.kind == ExperimentKind::kCustom) {
        throw ValidationError("config: the custom experiment requires 'custom_field'");
    }

    if (config.kind == ExperimentKind::kMultirobot) {
        parse_multirobot(j.contains("multirobot") ? j.at("multirobot") : Json::object(), config);
    } else if (j.contains("multirobot")) {
        throw ValidationError("config: 'multirobot' requires the multirobot experiment");
    }

    if (j.contains("output")) {
        check_keys(j.at("output"), {"timestamp"}, "'output'");
        if (j.at("output").contains("timestamp")) {
            config.timestamp = j.at("output").at("timestamp").get<bool>();
        }
    }
    return config;
}

ExperimentConfig read_experiment_config(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_experiment_config(buffer.str());
}

// --- output writing -----------------------------------------------------------

namespace {

using OrderedJson = nlohmann::ordered_json;

OrderedJson series_json(const Eigen::VectorXd& v) {
    OrderedJson arr = OrderedJson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

OrderedJson report_json(const MethodRun& run) {
    OrderedJson j;
    j["failed"] = run.failed;
    if (run.failed) {
        j["error"] = run.error;
        return j;
    }
    j["max_deviation"] = run.report.max_deviation;
    j["max_accel_norm"] = run.report.max_accel_norm;
    j["final_goal_error"] = run.report.final_goal_error;
    j["min_clearance"] = run.report.min_clearance;
    j["collided"] = run.report.collided;
    j["deviation_series"] = series_json(run.report.deviation_series);
    j["accel_norm_series"] = series_json(run.report.accel_norm_series);
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open for writing: " + path);
    file << text;
    if (!file) throw IoError("write failed: " + path);
}

const char* kMethodColors[5] = {"#d62728", "#9467bd", "#2ca02c", "#1f77b4", "#e377c2"};

int write_synthetic_outputs(const ExperimentConfig& config, const SyntheticSetup& setup,
                            const SyntheticResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    write_trajectory_csv(result.reference, (fs::path(out_dir) / "reference.csv").string());

    OrderedJson report;
    report["experiment"] = config.kind == ExperimentKind::kTwoObstacle ? "two-obstacle"
                          : config.kind == ExperimentKind::kCustom     ? "custom"
                                                                       : "one-obstacle";
    OrderedJson methods = OrderedJson::object();

    SvgPlot plot;
    Eigen::MatrixXd ref_points = result.reference.positions;
    plot.add_polyline(ref_points, "#ff7f0e", /*dashed=*/true);

    int failures = 0;
    for (std::size_t i = 0; i < result.methods.size(); ++i) {
        const MethodRun& run = result.methods[i];
        methods[run.name] = report_json(run);
        if (run.failed) {
            ++failures;
            continue;
        }
        write_trajectory_csv(run.trajectory, (fs::path(out_dir) / (run.name + ".csv")).string());
        plot.add_polyline(run.trajectory.positions, kMethodColors[i % 5], /*dashed=*/false);
    }
    for (const auto& sq : setup.obstacles) plot.add_outline(sq, "black");
    report["methods"] = std::move(methods);

    write_text((fs::path(out_dir) / "report.json").string(), report.dump(2) + "\n");
    plot.write((fs::path(out_dir) / "overlay.svg").string(), config.timestamp);
    return failures;
}

int write_multirobot_outputs(const ExperimentConfig& config, const MultirobotResult& result,
                             const std::string& out_dir) {
    namespace fs = std::filesystem;
    const Scene& scene = config.scene;

    OrderedJson report;
    report["experiment"] = "multirobot";
    report["variant"] = config.variant_name;
    OrderedJson robots = OrderedJson::array();

    SvgPlot plot;
    const char* robot_colors[3] = {"#d62728", "#2ca02c", "#1f77b4"};
    for (std::size_t i = 0; i < result.trajectories.size(); ++i) {
        write_trajectory_csv(result.trajectories[i],
                             (fs::path(out_dir) / ("robot_" + std::to_string(i) + ".csv")).string());
        OrderedJson entry;
        entry["final_goal_error"] = result.final_goal_errors[i];
        entry["min_static_clearance"] = result.min_static_clearances[i];
        robots.push_back(std::move(entry));

        const char* color = robot_colors[i % 3];
        plot.add_polyline(result.trajectories[i].positions, color, /*dashed=*/false);
        plot.add_marker(scene.robots[i].start, color, 4.0);
        plot.add_marker(scene.robots[i].goal, color, 6.0);
    }
    report["robots"] = std::move(robots);
    report["min_mutual_clearance"] = result.min_mutual_clearance;

    for (const auto& [sq, method] : scene.static_obstacles) {
        (void)method;
        plot.add_outline(sq, "black");
    }
    write_text((fs::path(out_dir) / "report.json").string(), report.dump(2) + "\n");
    plot.write((fs::path(out_dir) / "scene.svg").string(), config.timestamp);
    return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir);

    if (config.kind == ExperimentKind::kMultirobot) {
        return write_multirobot_outputs(config, run_multirobot(config.scene), out_dir);
    }

    SyntheticSetup setup;
    setup.dmp = config.dmp;
    setup.gains = config.gains;
    setup.cloud_count = config.cloud_count;
    if (config.demo_from_file) {
        setup.demo = read_trajectory_csv(config.demo_path);
    } else {
        setup.demo = spiral_demo(config.demo_duration, config.demo_dt);
    }

    if (config.kind == ExperimentKind::kCustom) {
        // One composed field over the configured method/obstacle pairs.
        const Dmp model = learn_from_demo(setup.demo, setup.dmp.learn_options());
        RolloutOptions options;
        options.dt = setup.dmp.dt;
        options.horizon = setup.dmp.horizon_factor * model.demo_duration;

        SyntheticResult result;
        result.reference = rollout(model, model.start, model.goal, options);
        MethodRun run;
        run.name = "custom";
        std::vector<FieldTerm> terms;
        std::vector<Superquadric> scoring;
        for (const auto& entry : config.custom_field) {
            scoring.push_back(entry.obstacle);
            if (entry.discretize) {
                terms.push_back({entry.method, discretize_boundary(entry.obstacle, *entry.discretize)});
            } else {
                terms.push_back({entry.method, entry.obstacle});
            }
        }
        try {
            run.trajectory = rollout(model, model.start, model.goal, options,
                                     compose_field(std::move(terms)));
            run.report = compare(result.reference, run.trajectory, clearance_list(scoring));
        } catch (const NumericalError& err) {
            run.failed = true;
            run.error = err.what();
        }
        result.methods.push_back(std::move(run));

        SyntheticSetup view = setup;
        view.obstacles = scoring;
        return write_synthetic_outputs(config, view, result, out_dir);
    }

    setup.obstacles = config.obstacle_override;
    if (setup.obstacles.empty()) {
        setup.obstacles = {benchmark_ellipse()};
        if (config.kind == ExperimentKind::kTwoObstacle) setup.obstacles.push_back(benchmark_circle());
    }
    return write_synthetic_outputs(config, setup, run_synthetic_benchmark(setup), out_dir);
}

}  // namespace dmp
