#ifndef DMP_BASIS_HPP_
#define DMP_BASIS_HPP_

#include <Eigen/Dense>

namespace dmp {

/**
 * @brief Gaussian radial basis functions over the phase variable.
 *
 * Centers follow the phase trajectory, c_i = exp(-alpha * i * T / N), so the
 * basis is geometrically spaced in s and uniformly spaced in time. Widths are
 * h_i = 1 / (c_{i+1} - c_i)^2, with the last width repeated.
 */
class BasisSet {
public:
    /// Builds n+1 basis functions for a demonstration of the given duration.
    /// Rejects n < 1 (the width formula needs at least two centers).
    static BasisSet make(int n, double alpha, double duration);

    /// Constructs from explicit centers/widths (e.g. a deserialized model).
    BasisSet(Eigen::VectorXd centers, Eigen::VectorXd widths);

    int count() const { return static_cast<int>(centers_.size()); }
    const Eigen::VectorXd& centers() const { return centers_; }
    const Eigen::VectorXd& widths() const { return widths_; }

    /// psi_i(s) = exp(-h_i (s - c_i)^2), componentwise; all values in (0, 1].
    Eigen::VectorXd evaluate(double s) const;

    /// Normalized, phase-gated forcing value for one dimension:
    /// f(s) = (sum_i w_i psi_i(s) / sum_i psi_i(s)) * s.
    /// Throws NumericalError if the normalization sum underflows below the
    /// smallest positive normal double.
    double forcing_value(const Eigen::VectorXd& weights, double s) const;

    /// Row vector r with r_i = psi_i(s) * s / sum_j psi_j(s), so that the
    /// forcing value is r . w. Shared by forcing evaluation and learning.
    Eigen::VectorXd normalized_row(double s) const;

private:
    Eigen::VectorXd centers_;
    Eigen::VectorXd widths_;
};

}  // namespace dmp

#endif  // DMP_BASIS_HPP_
