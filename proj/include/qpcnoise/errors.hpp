#pragma once

#include <stdexcept>
#include <string>

namespace qpcnoise {

// Bad user input: parameters, config files, grids.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateQubitError : public ConfigError {
 public:
  DegenerateQubitError() : ConfigError("degenerate qubit: epsilon = omega = 0 gives zero level splitting") {}
};

// The closed forms only exist for epsilon = 0.
class AsymmetricQubitError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Failures discovered while integrating or post-processing.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncationOverflowError : public SolverError {
 public:
  using SolverError::SolverError;
};

class NonDecayingRemainderError : public SolverError {
 public:
  using SolverError::SolverError;
};

class NonUniqueSteadyStateError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace qpcnoise
