#pragma once

#include <stdexcept>
#include <string>

namespace fa_twist {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: parameters that break irreducibility, points outside the
/// convergence domain, wrong branch. The CLI maps these to exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown on otherwise well-formed input (exit code 2).
class NumericError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class BranchError : public InputError {
 public:
  using InputError::InputError;
};

/// A denominator of a closed form vanished (within the resonance threshold).
class ResonanceError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Gamma function or Pochhammer denominator evaluated at a pole.
class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace fa_twist
