#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ridgekm {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed something outside an operation's domain.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error("input error: " + what) {}
};

/// Linear solver hit a numerically singular pivot.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::size_t pivot)
      : Error("solver error: " + what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Neumann series requested outside its convergence region (lambda*N <= ||K||).
class DivergenceError : public Error {
 public:
  DivergenceError(double spectral_norm, double lambda_n);
  double spectral_norm() const noexcept { return spectral_norm_; }
  double lambda_n() const noexcept { return lambda_n_; }

 private:
  double spectral_norm_;
  double lambda_n_;
};

/// Malformed text input; line is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ridgekm
