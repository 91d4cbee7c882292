#pragma once

#include <stdexcept>
#include <string>

namespace simarms {

/// An instance violates its invariants (e.g. Bernoulli mean outside [0, 1]).
class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric or structural parameter is out of its admissible range.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called while its documented precondition does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exhaustive search was asked to handle more vertices than its budget allows.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Policy/setting mismatch or unknown policy name.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace simarms
