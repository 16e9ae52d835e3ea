#pragma once

#include <stdexcept>

namespace rydent {

// Error taxonomy. Each class maps onto one CLI exit code / C-API status:
// validation 2, capability 3, numerical 4. io_error is reported as a
// validation failure at the boundary (bad paths and malformed files are
// input problems from the caller's point of view).

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct capability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filtering removed every state. Data-dependent, not a numerical breakdown.
struct empty_filter_error : validation_error {
    using validation_error::validation_error;
};

// Sigmoid fit could not be performed (too few points / flat curve).
struct fit_error : numerical_error {
    using numerical_error::numerical_error;
};

} // namespace rydent
