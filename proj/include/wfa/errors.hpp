#pragma once

#include <stdexcept>
#include <string>

namespace wfa {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or degenerate input: bad CSV cells, ragged rows, lengths that are
// not powers of two, out-of-range parameters, non-positive normalizers.
class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& msg) : Error(msg) {}
};

// Numerical failure: quadrature or root finding did not converge.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace wfa
