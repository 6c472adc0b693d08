#include "dmp/metrics.hpp"

#include <limits>

#include "dmp/errors.hpp"

namespace dmp {

ComparisonReport compare(const Trajectory& reference, const Trajectory& adapted,
                         const std::vector<ClearanceObstacle>& obstacles) {
    reference.validate();
    adapted.validate();
    if (reference.dims() != adapted.dims()) {
        throw ValidationError("compare: trajectories must share dimension");
    }
    if (adapted.times[0] > reference.duration() || reference.times[0] > adapted.duration()) {
        throw ValidationError("compare: trajectories have non-overlapping time ranges");
    }

    const int m = reference.samples();
    ComparisonReport report;
    report.deviation_series.resize(m);
    report.accel_norm_series.resize(m);
    for (int k = 0; k < m; ++k) {
        const double t = reference.times[k];
        report.deviation_series[k] =
                (Eigen::VectorXd(reference.positions.row(k)) - adapted.position_at(t)).norm();
        report.accel_norm_series[k] = adapted.acceleration_at(t).norm();
    }
    report.max_deviation = report.deviation_series.maxCoeff();
    report.max_accel_norm = report.accel_norm_series.maxCoeff();
    report.final_goal_error = (Eigen::VectorXd(adapted.positions.row(adapted.samples() - 1)) -
                               Eigen::VectorXd(reference.positions.row(m - 1)))
                                      .norm();

    double clearance = std::numeric_limits<double>::infinity();
    for (int k = 0; k < adapted.samples(); ++k) {
        const Eigen::VectorXd x = adapted.positions.row(k);
        for (const auto& obstacle : obstacles) {
            const double value = std::holds_alternative<Superquadric>(obstacle)
                                         ? isopotential(std::get<Superquadric>(obstacle), x)
                                         : (x - std::get<PointObstacle>(obstacle).position).norm();
            clearance = std::min(clearance, value);
        }
    }
    report.min_clearance = clearance;
    report.collided = clearance <= 0.0;
    return report;
}

}  // namespace dmp
