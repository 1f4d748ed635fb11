#pragma once

#include <stdexcept>
#include <string>

namespace sse {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Analytic formula requested outside its domain of validity, e.g. the
// homodyne closed form needs omega_r^2 > gamma^2/16.
struct ParameterDomain : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A state vector with (numerically) vanishing norm cannot be renormalized;
// signals a collapsed or otherwise unusable trajectory step.
struct ZeroNorm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MultiChannelUnsupported : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IntegrationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientSamples : std::logic_error {
    using std::logic_error::logic_error;
};

struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct AbortRateExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A single realization failed (zero norm or non-finite amplitude); carries
// the step index so the ensemble driver can report where it died.
struct TrajectoryAbort : std::runtime_error {
    long step;
    TrajectoryAbort(const std::string& what, long step_index)
        : std::runtime_error(what + " at step " + std::to_string(step_index)),
          step(step_index) {}
};

}  // namespace sse
