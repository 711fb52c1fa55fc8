#pragma once

#include <stdexcept>
#include <string>

namespace pwcsim {

// Domain errors (bad physical arguments) use std::domain_error /
// std::invalid_argument from <stdexcept>.  The types below exist so the
// C API and the CLI can map failures onto distinct exit codes.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FitError : std::runtime_error {
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pwcsim
