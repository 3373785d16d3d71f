#pragma once

#include <stdexcept>
#include <string>

namespace diamond {

// Raised for out-of-domain arguments (negative rates, bad indices, k < 1, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an exhaustive enumeration would exceed its configured guard.
class SizeError : public std::length_error {
 public:
  explicit SizeError(const std::string& what) : std::length_error(what) {}
};

// Raised for inputs where the requested quantity is undefined (e.g. a ratio over omega = 0).
class DegenerateNetworkError : public std::domain_error {
 public:
  explicit DegenerateNetworkError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace diamond
