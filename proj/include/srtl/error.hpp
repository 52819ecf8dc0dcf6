#pragma once

#include <stdexcept>

namespace srtl {

// Malformed or inconsistent experiment configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical precondition does not hold, e.g. t_max too small for the
// image or a phantom reaching into x1 <= margin (CLI exit code 3).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace srtl
