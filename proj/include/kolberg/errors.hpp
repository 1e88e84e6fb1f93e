#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kolberg {

// Base of every error the library throws on bad input or impossible requests.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Structurally invalid arguments: zero generator, empty level range, zero combination...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Mathematical domain violations: poles, |x| >= 1/e, negative base with fractional power.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public DomainError {
 public:
  DivisionByZero() : DomainError("division by zero") {}
  using DomainError::DomainError;
};

// A stored quatuor or certificate failed its exact re-verification.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// Newton did not converge, or a tolerance cannot be met at the requested precision.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace kolberg
