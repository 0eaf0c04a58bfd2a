#pragma once

#include <stdexcept>
#include <string>

namespace rff {

// Requested quantity needs bounded spectral support (e.g. sup-moments of a
// Gaussian measure with a nonzero derivative order).
struct UnboundedSupportError : std::domain_error {
    using std::domain_error::domain_error;
};

// Point dimension does not match the measure / feature set dimension.
struct DimensionMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Derivative order above what the closed-form/finite-difference oracle supports.
struct UnsupportedOrderError : std::domain_error {
    using std::domain_error::domain_error;
};

// Certified sup grid would exceed the configured point cap; raise target_slack.
struct GridBudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tensor-grid quadrature requested above its dimension limit.
struct UnsupportedDimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Slope fit (or similar) given too few / nonpositive inputs.
struct DegenerateInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameter outside its documented domain (diam <= 0, r <= 1, a <= 1, ...).
struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace rff
