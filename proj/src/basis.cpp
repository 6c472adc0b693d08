#include "dmp/basis.hpp"

#include <cmath>
#include <limits>

#include "dmp/errors.hpp"

namespace dmp {

BasisSet BasisSet::make(int n, double alpha, double duration) {
    if (n < 1) throw ValidationError("BasisSet: need at least n = 1 (two centers)");
    if (!(alpha > 0.0)) throw ValidationError("BasisSet: alpha must be positive");
    if (!(duration > 0.0)) throw ValidationError("BasisSet: duration must be positive");

    Eigen::VectorXd centers(n + 1);
    for (int i = 0; i <= n; ++i) {
        centers[i] = std::exp(-alpha * static_cast<double>(i) * duration / static_cast<double>(n));
    }
    Eigen::VectorXd widths(n + 1);
    for (int i = 0; i < n; ++i) {
        const double gap = centers[i + 1] - centers[i];
        widths[i] = 1.0 / (gap * gap);
    }
    widths[n] = widths[n - 1];
    return BasisSet(std::move(centers), std::move(widths));
}

BasisSet::BasisSet(Eigen::VectorXd centers, Eigen::VectorXd widths)
    : centers_(std::move(centers)), widths_(std::move(widths)) {
    if (centers_.size() != widths_.size() || centers_.size() < 2) {
        throw ValidationError("BasisSet: centers/widths must share size >= 2");
    }
    for (int i = 0; i + 1 < centers_.size(); ++i) {
        if (!(centers_[i] > centers_[i + 1])) {
            throw ValidationError("BasisSet: centers must be strictly decreasing");
        }
    }
    if (!(centers_[centers_.size() - 1] > 0.0)) {
        throw ValidationError("BasisSet: centers must be positive");
    }
    for (int i = 0; i < widths_.size(); ++i) {
        if (!(widths_[i] > 0.0) || !std::isfinite(widths_[i])) {
            throw ValidationError("BasisSet: widths must be positive and finite");
        }
    }
}

Eigen::VectorXd BasisSet::evaluate(double s) const {
    Eigen::VectorXd psi(centers_.size());
    for (int i = 0; i < centers_.size(); ++i) {
        const double d = s - centers_[i];
        psi[i] = std::exp(-widths_[i] * d * d);
    }
    return psi;
}

Eigen::VectorXd BasisSet::normalized_row(double s) const {
    Eigen::VectorXd psi = evaluate(s);
    const double sum = psi.sum();
    // Eq.-undefined at zero denominator; refuse to divide by underflowed sums.
    if (sum < std::numeric_limits<double>::min()) {
        throw NumericalError("BasisSet: degenerate normalization (sum of basis values underflowed at s=" +
                             std::to_string(s) + ")");
    }
    return psi * (s / sum);
}

double BasisSet::forcing_value(const Eigen::VectorXd& weights, double s) const {
    if (weights.size() != centers_.size()) {
        throw ValidationError("BasisSet: weight vector length must equal basis count");
    }
    return normalized_row(s).dot(weights);
}

}  // namespace dmp
