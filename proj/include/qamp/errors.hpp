#pragma once

#include <stdexcept>

namespace qamp {

/// Malformed input: non-unit direction, family mismatch, bad schema, ...
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A configuration space is too large for exhaustive work under the
/// current enumeration budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An identically zero amplitude distribution has no ray; Born-rule
/// normalization is undefined.
struct DegenerateStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A distribution fails to implement a claimed correlation constraint
/// through destructive interference.
struct ModelInconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qamp
