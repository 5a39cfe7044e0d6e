#pragma once

#include <stdexcept>
#include <string>

namespace tracepoly {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (word grammar, polynomial JSON, ...).
struct ParseError : Error {
  using Error::Error;
};

// Operands or arguments outside an operation's domain.
struct PreconditionError : Error {
  using Error::Error;
};

struct BasisMismatch : Error {
  using Error::Error;
};

// A quaternion product or conversion left the polynomial ring.
class NonPolynomialResult : public Error {
 public:
  NonPolynomialResult(std::string component, const std::string& what)
      : Error(what), component_(std::move(component)) {}
  const std::string& component() const { return component_; }

 private:
  std::string component_;
};

}  // namespace tracepoly
