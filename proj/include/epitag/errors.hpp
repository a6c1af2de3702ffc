#pragma once

#include <stdexcept>

namespace epitag {

// Parse produced zero valid records.
struct EmptyInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Declared format does not match the content (e.g. CSV header missing columns).
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Smoothing window or grid step out of range.
struct InvalidWindow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Every value of the intensity series is zero; no occurrence to extract.
struct AllZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Step size underflow or step budget exhausted in the ODE solver.
struct IntegrationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fewer samples than summarize() needs.
struct ChainTooShort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sampler stalled: acceptance collapsed or the chain never moved.
struct DegenerateFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace epitag
