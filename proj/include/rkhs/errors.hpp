#pragma once

#include <stdexcept>
#include <string>

namespace rkhs {

// Input-side failures (bad arguments, bad specs). The CLI maps these to exit 1.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NegativeCoefficient : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failures. The CLI maps these to exit 2.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace rkhs
