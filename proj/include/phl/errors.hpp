// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace phl {

// Argument outside the mathematical domain of an operation (e.g. the Bose
// factor at zero energy, a tabulated model queried off its support).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid model/configuration: violated invariants, malformed config files,
// unrepresentable requests.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: singular linear systems, unstable integration.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Time-stepping instability detected by the covariance propagator.
class IntegrationError : public NumericalError {
public:
    explicit IntegrationError(const std::string& what) : NumericalError(what) {}
};

} // namespace phl
