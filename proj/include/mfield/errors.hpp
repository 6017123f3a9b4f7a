#pragma once

#include <stdexcept>
#include <string>

namespace mfield {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or precondition violation (bad exponent, bad grid, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Configuration or schema problem detected before any computation starts.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: CFL violation, NaN, non-convergent root finding.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfield
