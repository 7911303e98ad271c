#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posicert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed polynomial, rational, interval-union or certificate text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

// Exact division left a nonzero remainder.
class IndivisibleError : public Error {
 public:
  explicit IndivisibleError(std::string remainder)
      : Error("polynomial division is not exact: remainder " + remainder),
        remainder_(std::move(remainder)) {}

  const std::string& remainder() const { return remainder_; }

 private:
  std::string remainder_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The input is outside what the constructive algorithms support (for example
// an irreducible odd-multiplicity factor of degree > 2).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A construction produced something that does not verify. Signals a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace posicert
