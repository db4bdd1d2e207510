#pragma once

#include <stdexcept>
#include <string>

namespace dystro {

// Two error families, matching the CLI exit-code contract:
// DomainError = bad parameters, states or inputs (exit code 2),
// NumericalError = solver breakdown or divergence (exit code 3).

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParameterError : DomainError {
  using DomainError::DomainError;
};

// Requested above-threshold machinery (gamma cutoff, speed branch, minimal
// speed) while Theta >= 0: the healthy state is stable, no front invades.
struct NoInvasionError : DomainError {
  using DomainError::DomainError;
};

// gamma outside (0, gamma_cutoff): the positive speed branch is not defined.
struct OutOfBranchError : DomainError {
  using DomainError::DomainError;
};

// |Theta| below the degeneracy tolerance: regime classification is ill-posed.
struct ThresholdDegenerateError : DomainError {
  using DomainError::DomainError;
};

struct NoFrontError : DomainError {
  using DomainError::DomainError;
};

struct InsufficientDataError : DomainError {
  using DomainError::DomainError;
};

struct StiffnessError : NumericalError {
  using NumericalError::NumericalError;
};

struct StepTooLargeError : NumericalError {
  using NumericalError::NumericalError;
};

struct SimulationDivergedError : NumericalError {
  using NumericalError::NumericalError;
};

// The dispersion branch has its infimum on the boundary of (0, gamma_cutoff);
// no interior minimal speed exists.
struct NotAttainedError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace dystro
