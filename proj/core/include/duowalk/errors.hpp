#pragma once

#include <stdexcept>
#include <string>

namespace duowalk {

// Invalid user-supplied parameter. Messages name the offending key so the
// CLI can surface them verbatim (exit status 1).
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Eq.-(2)-style initial state that is numerically the null vector
// (m0 == n0 with theta at the antisymmetric point).
struct DegenerateInputError : InputError {
    explicit DegenerateInputError(const std::string& what) : InputError(what) {}
};

// Propagation failure: norm drift past the abort threshold, or non-finite
// amplitudes. Carries the step index at which the run was abandoned
// (exit status 2 in the CLI).
struct NumericalError : std::runtime_error {
    NumericalError(const std::string& what, long step_index, double norm_drift)
        : std::runtime_error(what), step(step_index), drift(norm_drift) {}

    long step = -1;
    double drift = 0.0;
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace duowalk
