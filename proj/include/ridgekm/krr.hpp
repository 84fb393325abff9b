#pragma once

// Kernel ridge regression in representer form:
//   f(x) = sum_i a_i k(x, x_i),  a = (K + lambda N I)^{-1} y,
// with the closed-form training loss lambda y^T (K + lambda N I)^{-1} y and its
// Neumann-series truncation.

#include <cstddef>
#include <iosfwd>
#include <span>

#include "ridgekm/features.hpp"

namespace ridgekm {

namespace io {
class LineReader;
}

struct RegularizedProblem {
  GramMatrix k;
  Vector y;
  double lambda;

  std::size_t n() const noexcept { return y.size(); }
  /// lambda > 0 and K is N x N.
  void validate() const;
};

class FittedModel {
 public:
  FittedModel(ThetaParams theta, Matrix support, Vector a, double lambda);

  const ThetaParams& theta() const noexcept { return theta_; }
  const Matrix& support() const noexcept { return support_; }
  std::span<const double> a() const noexcept { return a_; }
  double lambda() const noexcept { return lambda_; }

 private:
  ThetaParams theta_;
  Matrix support_;
  Vector a_;
  double lambda_;
};

/// Solves (K + lambda N I) a = y by Householder QR. Throws SolverError on a
/// singular pivot or when the residual exceeds 1e-8 ||y||.
Vector solve_regularized(const GramMatrix& k, std::span<const double> y, double lambda);

FittedModel fit(const ThetaParams& theta, const Matrix& x, std::span<const double> y, double lambda);

double predict(const FittedModel& model, std::span<const double> x);

/// lambda y^T (K + lambda N I)^{-1} y, via the QR solve.
double closed_form_loss(const RegularizedProblem& problem);

/// (1/N) y^T (I + K / (lambda N))^{-1} y; the same number in the
/// normalization of the Neumann criterion.
double closed_form_loss_normalized(const RegularizedProblem& problem);

/// (1/N) ||K a - y||^2 + lambda a^T K a on the training sample.
double direct_loss(const FittedModel& model, const Matrix& x, std::span<const double> y);

/// Largest |eigenvalue| of K (power iteration, relative tolerance 1e-10).
double spectral_norm(const GramMatrix& k);

/// ||Phi diag(c) Phi^T|| computed in the m-dimensional feature space.
double feature_spectral_norm(const Matrix& phi, std::span<const double> c);

/// (1/N) y^T [sum_{j=0}^{L} (-1)^j (lambda N)^{-j} K^j] y by Horner recursion on
/// matrix-vector products. Throws DivergenceError unless lambda N > ||K||.
double neumann_loss(const RegularizedProblem& problem, std::size_t order);

/// As above with ||K|| supplied by the caller.
double neumann_loss(const RegularizedProblem& problem, std::size_t order, double k_norm);

/// Same truncated series evaluated through the eigendecomposition K = U^T diag U.
/// O(N^3); kept as a cross-check for small problems.
double neumann_loss_eigen(const RegularizedProblem& problem, std::size_t order);

/// "model <N> <d>", "lambda <v>", theta block, "support" + N rows, "coefficients" + N rows.
void write_model(std::ostream& out, const FittedModel& model);
FittedModel read_model(std::istream& in);
FittedModel read_model(io::LineReader& reader);

}  // namespace ridgekm
