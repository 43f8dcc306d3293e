#pragma once

#include <stdexcept>
#include <string>

namespace bx {

// Base of everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated precondition of an operation (wrong lengths, p not <= m, ...).
struct PreconditionError : Error {
  using Error::Error;
};

// Parameter name clash or a Laurent pole below the window.
struct ParamError : Error {
  using Error::Error;
};

// Syntax or validation failure in an expression, with the character offset.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

// Malformed spec file or an inadmissible presentation.
struct SpecError : Error {
  using Error::Error;
};

// Numerical domain exit: flow blow-up, point outside a domain predicate.
struct DomainError : Error {
  using Error::Error;
};

}  // namespace bx
