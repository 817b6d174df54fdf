#pragma once

#include <stdexcept>
#include <string>

namespace subnormal {

// Base of every error raised by the library. The CLI maps InvalidInput to
// exit code 2 and BudgetExceeded to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidGenerator : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotAMember : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Raised when two independent computations that must agree do not.
class Mismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace subnormal
