#pragma once

#include <stdexcept>
#include <string>

namespace dirlap {

/// Input that violates a documented precondition or file format.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an iterative kernel hits its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dirlap
