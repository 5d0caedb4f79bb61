#pragma once

#include <stdexcept>
#include <string>

namespace cubesum {

/// Thrown when an exact quantity would leave the supported range [0, 2^63 - 1].
/// Results are never wrapped or truncated.
class RangeError : public std::overflow_error {
 public:
  explicit RangeError(const std::string& what) : std::overflow_error(what) {}
};

/// Thrown when a data structure would exceed the configured memory budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cubesum
