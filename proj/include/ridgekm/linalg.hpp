#pragma once

#include <cstddef>
#include <span>

#include "ridgekm/matrix.hpp"

namespace ridgekm {

/// Householder QR of a square matrix, kept in factored form for repeated solves.
///
/// Construction throws SolverError when a diagonal entry of R falls below
/// `singular_rel * ||A||_F`; the error carries the offending pivot index.
class HouseholderQr {
 public:
  explicit HouseholderQr(const Matrix& a, double singular_rel = 1e-14);

  /// Solves A x = b.
  Vector solve(std::span<const double> b) const;

  std::size_t size() const noexcept { return n_; }
  /// |R(k,k)|
  double pivot(std::size_t k) const;

 private:
  std::size_t n_ = 0;
  // Column-major factored storage: R above the diagonal, Householder vectors
  // below (unit leading entry implied).
  std::vector<double> qr_;
  Vector tau_;
  Vector diag_;
};

struct SymmetricEigen {
  Vector values;   ///< ascending
  Matrix vectors;  ///< column j pairs with values[j]; empty unless requested
};

/// Throws InputError unless |a(i,j) - a(j,i)| <= tol * max(1, max|a|).
void require_symmetric(const Matrix& a, double tol = 1e-12);

/// Cyclic Jacobi eigensolver.
SymmetricEigen symmetric_eigen(const Matrix& a, bool want_vectors = false);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue_sym(const Matrix& a);

/// Largest |eigenvalue| of a symmetric matrix by power iteration on A^2.
/// Stops once the Rayleigh residual is below rel_tol times the estimate.
double power_spectral_norm(const Matrix& a, double rel_tol = 1e-10,
                           std::size_t max_iter = 200000);

double frobenius_norm(const Matrix& a);

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Vector multiply(const Matrix& a, std::span<const double> x);

}  // namespace ridgekm
