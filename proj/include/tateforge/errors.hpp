#pragma once

#include <stdexcept>
#include <string>

namespace tateforge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The working precision cannot certify the requested fact.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Exponents with different irrational scales were combined.
class IncompatibleScale : public Error {
 public:
  using Error::Error;
};

/// Operands live over different base rings, or an argument is outside the domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A strict hypothesis could not be decided at the available precision.
class Indeterminate : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tateforge
