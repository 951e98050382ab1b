#pragma once

#include <stdexcept>
#include <string>

namespace fluxlab {

// Bad input (degenerate geometry, out-of-range parameter, malformed file).
// The CLI maps this to exit status 2.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure failed to converge to its requested tolerance.
// The CLI maps this to exit status 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fluxlab
