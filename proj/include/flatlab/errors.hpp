#pragma once

#include <stdexcept>
#include <string>

namespace flatlab {

// Bad input from the caller: out-of-range parameter, invalid length, violated
// exponent constraint. The CLI maps these to exit code 2.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A request the numerical machinery declines to serve (size caps, grid too
// coarse, degenerate input, failed internal invariant). CLI exit code 3.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridResolutionError : public CapabilityError {
public:
    using CapabilityError::CapabilityError;
};

class DegenerateInputError : public CapabilityError {
public:
    using CapabilityError::CapabilityError;
};

class NumericError : public CapabilityError {
public:
    using CapabilityError::CapabilityError;
};

}  // namespace flatlab
