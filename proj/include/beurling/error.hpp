#pragma once

#include <stdexcept>
#include <string>

namespace beurling {

// Validation-class errors (bad arguments, violated preconditions, malformed
// configs) are distinguished from numerical ones so the CLI can map them to
// different exit codes.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (e.g. ω(t) with t > T).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class PreconditionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Perturbation amplitude too large for a star domain (r_min <= 0).
class AmplitudeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The grid is too coarse for the requested operation.
class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GeometryError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace beurling
