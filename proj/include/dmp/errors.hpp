#ifndef DMP_ERRORS_HPP_
#define DMP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dmp {

/// Invalid arguments, violated invariants, malformed files or configs.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failures during computation: divergence, evaluation inside an
/// obstacle, singular points, degenerate basis normalization.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem-level failures (missing files, unwritable outputs).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dmp

#endif  // DMP_ERRORS_HPP_
