#pragma once

#include <stdexcept>
#include <string>

namespace varns {

// Invalid configuration (grid sizes, tolerances, config files).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Bad numerical data (non-finite samples, violated preconditions on values).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// API misuse (mismatched grids, unpinned initial slice, bad test functions).
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Overflow / divergence detected during a computation.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace varns
