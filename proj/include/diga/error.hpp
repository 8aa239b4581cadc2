#pragma once

#include <stdexcept>

namespace diga {

/// Invalid configuration: bad layer bounds, rates outside [0,1], missing flags.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unreadable, malformed or inconsistent input data.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shape mismatch between parameter sets, architectures and inputs.
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The architecture search space cannot supply enough distinct candidates.
struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Training diverged to a non-finite cost.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace diga
