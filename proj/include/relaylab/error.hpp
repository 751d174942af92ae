#pragma once

#include <stdexcept>
#include <string>

namespace relaylab {

/// Raised for arguments that violate a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a requested feature is outside what a routine supports
/// (e.g. a closed form asked for K != 1).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised by root finders when the target is not bracketed.
class BracketingError : public std::runtime_error {
 public:
  BracketingError(const std::string& what, double attainable_lo, double attainable_hi)
      : std::runtime_error(what), lo_(attainable_lo), hi_(attainable_hi) {}

  double attainable_lo() const noexcept { return lo_; }
  double attainable_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace relaylab
