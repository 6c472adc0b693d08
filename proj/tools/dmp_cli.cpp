// Command-line front end: learn models from demonstrations, roll them out
// with optional endpoint/tempo overrides, run the canned experiments, and
// compare trajectory files.
//
// Exit codes: 0 success, 1 validation/parse failure, 2 numerical failure,
// 3 I/O failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dmp/csv.hpp"
#include "dmp/demos.hpp"
#include "dmp/errors.hpp"
#include "dmp/experiments.hpp"
#include "dmp/metrics.hpp"
#include "dmp/model_io.hpp"

namespace {

Eigen::VectorXd parse_point(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t comma = text.find(',', begin);
        const std::string field =
                text.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
        try {
            std::size_t used = 0;
            values.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw dmp::ValidationError(flag + ": expected comma-separated numbers, got '" + text +
                                       "'");
        }
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return Eigen::Map<Eigen::VectorXd>(values.data(), values.size());
}

struct LearnArgs {
    std::string demo_path;
    bool builtin_spiral = false;
    std::string out;
    double elastic = 1050.0;
    std::optional<double> damping;
    double alpha = 4.0;
    int n_basis = 50;
    std::optional<double> regularization;
    double duration = 1.0;
    double dt = 1e-3;
};

int cmd_learn(const LearnArgs& args) {
    dmp::Trajectory demo;
    if (args.builtin_spiral) {
        demo = dmp::spiral_demo(args.duration, args.dt);
    } else if (!args.demo_path.empty()) {
        demo = dmp::read_trajectory_csv(args.demo_path);
    } else {
        throw dmp::ValidationError("learn: provide a demo CSV or --builtin-spiral");
    }
    dmp::LearnOptions options = dmp::LearnOptions::with_gain(args.elastic);
    if (args.damping) options.damping = Eigen::VectorXd::Constant(1, *args.damping);
    options.alpha = args.alpha;
    options.n_basis = args.n_basis;
    if (args.regularization) options.regularization = *args.regularization;
    dmp::write_dmp_json(dmp::learn_from_demo(demo, options), args.out);
    return 0;
}

struct RolloutArgs {
    std::string model_path;
    std::string out;
    double dt = 1e-3;
    std::optional<double> horizon;
    std::optional<std::string> goal;
    std::optional<std::string> start;
    std::optional<double> tau;
};

int cmd_rollout(const RolloutArgs& args) {
    const dmp::Dmp model = dmp::read_dmp_json(args.model_path);
    dmp::RolloutOptions options;
    options.dt = args.dt;
    options.tau = args.tau;
    const double tau = args.tau.value_or(model.tau);
    options.horizon = args.horizon.value_or(3.0 * model.demo_duration * tau / model.tau);
    const Eigen::VectorXd start = args.start ? parse_point(*args.start, "--start") : model.start;
    const Eigen::VectorXd goal = args.goal ? parse_point(*args.goal, "--goal") : model.goal;
    dmp::write_trajectory_csv(dmp::rollout(model, start, goal, options), args.out);
    return 0;
}

struct MetricsArgs {
    std::string reference_path;
    std::string adapted_path;
    std::string out;
};

int cmd_metrics(const MetricsArgs& args) {
    const dmp::Trajectory reference = dmp::read_trajectory_csv(args.reference_path);
    const dmp::Trajectory adapted = dmp::read_trajectory_csv(args.adapted_path);
    const dmp::ComparisonReport report = dmp::compare(reference, adapted);

    nlohmann::ordered_json j;
    j["max_deviation"] = report.max_deviation;
    j["max_accel_norm"] = report.max_accel_norm;
    j["final_goal_error"] = report.final_goal_error;
    j["min_clearance"] = report.min_clearance;
    j["collided"] = report.collided;
    nlohmann::ordered_json dev = nlohmann::ordered_json::array();
    nlohmann::ordered_json acc = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < report.deviation_series.size(); ++i) {
        dev.push_back(report.deviation_series[i]);
        acc.push_back(report.accel_norm_series[i]);
    }
    j["deviation_series"] = std::move(dev);
    j["accel_norm_series"] = std::move(acc);

    std::ofstream file(args.out, std::ios::binary);
    if (!file) throw dmp::IoError("cannot open for writing: " + args.out);
    file << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trajectory learning and reactive obstacle avoidance"};
    app.require_subcommand(1);

    LearnArgs learn;
    CLI::App* learn_cmd = app.add_subcommand("learn", "Fit a model to a demonstration");
    learn_cmd->add_option("demo", learn.demo_path, "Demonstration CSV");
    learn_cmd->add_flag("--builtin-spiral", learn.builtin_spiral, "Use the analytic spiral demo");
    learn_cmd->add_option("--out", learn.out, "Model JSON output path")->required();
    learn_cmd->add_option("--elastic", learn.elastic, "Elastic gain K");
    learn_cmd->add_option("--damping", learn.damping, "Damping override (default 2 sqrt(K))");
    learn_cmd->add_option("--alpha", learn.alpha, "Phase decay gain");
    learn_cmd->add_option("--n-basis", learn.n_basis, "Basis function count N");
    learn_cmd->add_option("--regularization", learn.regularization, "Ridge regularization");
    learn_cmd->add_option("--duration", learn.duration, "Spiral demo duration");
    learn_cmd->add_option("--dt", learn.dt, "Spiral demo sampling step");

    RolloutArgs roll;
    CLI::App* roll_cmd = app.add_subcommand("rollout", "Execute a learned model");
    roll_cmd->add_option("model", roll.model_path, "Model JSON")->required();
    roll_cmd->add_option("--out", roll.out, "Trajectory CSV output path")->required();
    roll_cmd->add_option("--dt", roll.dt, "Integration step");
    roll_cmd->add_option("--horizon", roll.horizon, "Rollout horizon in seconds");
    roll_cmd->add_option("--goal", roll.goal, "Goal override, comma-separated");
    roll_cmd->add_option("--start", roll.start, "Start override, comma-separated");
    roll_cmd->add_option("--tau", roll.tau, "Temporal scaling override");

    std::string config_path, out_dir;
    bool no_timestamp = false;
    CLI::App* exp_cmd = app.add_subcommand("experiment", "Run a configured experiment");
    exp_cmd->add_option("--config", config_path, "Experiment config JSON")->required();
    exp_cmd->add_option("--out", out_dir, "Output directory")->required();
    exp_cmd->add_flag("--no-timestamp", no_timestamp, "Omit the SVG timestamp comment");

    MetricsArgs metrics;
    CLI::App* metrics_cmd = app.add_subcommand("metrics", "Compare two trajectory CSVs");
    metrics_cmd->add_option("reference", metrics.reference_path, "Reference CSV")->required();
    metrics_cmd->add_option("adapted", metrics.adapted_path, "Adapted CSV")->required();
    metrics_cmd->add_option("--out", metrics.out, "Report JSON output path")->required();

    try {
        app.parse(argc, argv);
        if (learn_cmd->parsed()) return cmd_learn(learn);
        if (roll_cmd->parsed()) return cmd_rollout(roll);
        if (metrics_cmd->parsed()) return cmd_metrics(metrics);
        if (exp_cmd->parsed()) {
            dmp::ExperimentConfig config = dmp::read_experiment_config(config_path);
            if (no_timestamp) config.timestamp = false;
            const int failures = dmp::run_experiment(config, out_dir);
            if (failures > 0) {
                std::cerr << failures << " method run(s) failed; see report.json\n";
                return 2;
            }
            return 0;
        }
    } catch (const CLI::ParseError& err) {
        return app.exit(err);
    } catch (const dmp::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const dmp::NumericalError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const dmp::IoError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
    return 0;
}
