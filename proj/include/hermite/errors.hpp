#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hermite {

/// Result does not fit in the requested representation (or a size cap was exceeded).
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// An iterative or adaptive procedure failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

/// Truncating an infinite contour left a tail larger than allowed.
struct TruncationError : std::runtime_error {
    TruncationError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate(estimate) {}
    double estimate;
};

/// A bound was requested for a function that does not meet its growth hypothesis.
struct HypothesisError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Too few usable points for a decay fit.
struct FitError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ParseError : std::invalid_argument {
    ParseError(const std::string& what, std::size_t offset)
        : std::invalid_argument(what + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

struct EvalError : std::domain_error {
    EvalError(const std::string& what, std::size_t offset)
        : std::domain_error(what + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

}  // namespace hermite
