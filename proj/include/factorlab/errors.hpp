#pragma once

#include <stdexcept>
#include <string>

namespace factorlab {

// Error taxonomy mirrored by the CLI exit codes:
// InputError -> 1, NumericalError -> 2, InfeasibleError -> 3.

struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace factorlab
