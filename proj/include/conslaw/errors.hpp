#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conslaw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax or symbol-resolution failure; position is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class NotPolynomial : public Error {
 public:
  using Error::Error;
};

// A relation or declaration that cannot be turned into a terminating rewrite rule.
class InvalidRelation : public Error {
 public:
  using Error::Error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

// Raised when a reduction needs a differential consequence above the closure order.
class ClosureOrderError : public Error {
 public:
  ClosureOrderError(const std::string& jet, int needed, int available)
      : Error("consequence for " + jet + " needs closure order " + std::to_string(needed) +
              " but the system was closed at order " + std::to_string(available)),
        needed_(needed) {}
  int needed() const { return needed_; }

 private:
  int needed_;
};

class IncompatibleSystem : public Error {
 public:
  using Error::Error;
};

class InvalidTransform : public Error {
 public:
  using Error::Error;
};

class UnboundSymbol : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class StabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace conslaw
