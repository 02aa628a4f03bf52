#pragma once

#include <stdexcept>
#include <string>

namespace eiscong {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// bad arguments: parity, ranges, non-PSD matrices, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class UnsupportedHeckeField : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// internal consistency failure (inexact division, bad certificate, ...)
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace eiscong
