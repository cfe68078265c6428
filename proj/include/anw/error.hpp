#pragma once

#include <stdexcept>
#include <string>

namespace anw {

/// Invalid input: bad profile, mismatched dimensions, malformed config or file.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative routine hit its cap (eigensolver sweeps, quadrature refinement).
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity is mathematically undefined for the given input (e.g. all-zero amplitudes).
class DegenerateError : public std::domain_error {
 public:
  explicit DegenerateError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace anw
