#pragma once

#include <stdexcept>

namespace isolde {

/// Budget exhaustion (exploration nodes, evaluation counts, search ceilings).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A structural limit was exceeded (instance too large for the configured
/// capacity). Reported to callers the same way as other resource exhaustion.
struct CapacityError : ResourceError {
    using ResourceError::ResourceError;
};

}  // namespace isolde
