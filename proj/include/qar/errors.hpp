#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qar {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of a closed-form expression (e.g. n(ω) at ω ≤ 0).
struct DomainError : Error {
    using Error::Error;
};

// Generator whose stationary space is not one-dimensional.
struct DegenerateGeneratorError : Error {
    using Error::Error;
};

// Frequency grid too coarse for the narrowest Lorentzian filter.
struct ResolutionError : Error {
    using Error::Error;
};

// Retarded propagator without broadening at a sample where it is singular.
struct BroadeningError : Error {
    using Error::Error;
};

// Time-domain tails not decayed before the transform window edge.
struct WindowError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, std::vector<double> history)
        : Error(what), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace qar
