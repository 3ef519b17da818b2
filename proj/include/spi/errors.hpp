#pragma once

#include <stdexcept>
#include <string>

namespace spi {

// Invalid arguments to a library operation (bad element ids, malformed
// parameter combinations, duplicate elements, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance files that fail SPI v1 validation.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A peeling step was asked to cover elements whose width exceeds the
// promised bound, so no w-chain cover exists.
class WidthViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// count_linear_extensions refuses instances above its configured limit.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The recovered order disagrees with the instance's hidden order.
class SortMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spi
