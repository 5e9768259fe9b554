#pragma once

#include <stdexcept>
#include <string>

namespace relaynet {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Invalid scenario or experiment configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical procedure did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Co-located points or a vanishing denominator.
class SingularityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Special-function parameters outside the supported family.
class UnsupportedParameters : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Caller broke a documented precondition.
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace relaynet
