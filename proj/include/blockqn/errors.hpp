#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockqn {

/// Objective or gradient evaluation produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what, std::ptrdiff_t coordinate = -1)
      : std::runtime_error(what), coordinate_(coordinate) {}

  /// Index of the offending output coordinate, or -1 if not attributable.
  std::ptrdiff_t coordinate() const noexcept { return coordinate_; }

 private:
  std::ptrdiff_t coordinate_;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvalidArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace blockqn
