#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rctls {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad dimensions, out-of-range parameters, malformed data.
class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& msg) : Error(msg) {}
};

// An iterative kernel failed to converge within its iteration cap.
class NumericalFailureError : public Error {
public:
    NumericalFailureError(const std::string& msg, std::size_t iterations)
        : Error(msg), iterations(iterations) {}
    std::size_t iterations;
};

// TLS genericity failure: the smallest relevant singular value is too close
// to a coefficient singular value, so the closed form is not usable.
class NongenericError : public Error {
public:
    explicit NongenericError(const std::string& msg, double gap = 0.0)
        : Error(msg), gap(gap) {}
    double gap;
};

// Truncated TLS asked for a truncation level with no spectral gap.
class InvalidTruncationError : public Error {
public:
    explicit InvalidTruncationError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace rctls
