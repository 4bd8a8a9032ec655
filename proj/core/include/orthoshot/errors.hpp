#pragma once

#include <stdexcept>
#include <string>

namespace orthoshot {

// Invalid convolution/tensor geometry (shape mismatch, non-divisible stride, ...).
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values where finite math is required.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Bad run-config file: unknown key, out-of-range value, unparsable entry.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / decode failures.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orthoshot
