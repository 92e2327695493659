#pragma once

#include <stdexcept>
#include <string>

namespace macid {

// Bad command-line / API usage (exit code 1 in the CLI).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid data: malformed kernels, non-normalized distributions, ... (exit 2).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched alphabets or block lengths between operands.
class DimensionError : public ValidationError {
 public:
  explicit DimensionError(const std::string& what) : ValidationError(what) {}
};

// Requested enumeration exceeds the configured state cap (exit 3).
class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace macid
