#pragma once

#include <stdexcept>
#include <string>

namespace gpembed {

// Bad arguments, malformed specs, shape mismatches. CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Convergence failures, degenerate matrices, spectral breakdowns. CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// File read/write failures. CLI exit code 1.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gpembed
