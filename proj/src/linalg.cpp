#include "ridgekm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "ridgekm/error.hpp"
#include "ridgekm/simd.hpp"

namespace ridgekm {

HouseholderQr::HouseholderQr(const Matrix& a, double singular_rel) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InputError("QR needs a nonempty square matrix");
  n_ = a.rows();
  const std::size_t n = n_;
  qr_.resize(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) qr_[j * n + i] = a(i, j);
  tau_.assign(n, 0.0);
  diag_.assign(n, 0.0);

  const double threshold = singular_rel * frobenius_norm(a);
  for (std::size_t k = 0; k < n; ++k) {
    double* col = qr_.data() + k * n;
    const std::size_t len = n - k;
    std::span<const double> tail(col + k + 1, len - 1);
    const double sigma = simd::dot(tail, tail);
    const double alpha = col[k];
    double beta = alpha;
    double tau = 0.0;
    if (sigma != 0.0) {
      beta = -std::copysign(std::sqrt(alpha * alpha + sigma), alpha);
      tau = (beta - alpha) / beta;
      const double scale = 1.0 / (alpha - beta);
      for (std::size_t i = k + 1; i < n; ++i) col[i] *= scale;
    }
    tau_[k] = tau;
    diag_[k] = beta;
    if (!(std::abs(beta) > threshold)) {
      throw SolverError("numerically singular R at pivot " + std::to_string(k) +
                            " (|R_kk| = " + std::to_string(std::abs(beta)) + ")",
                        k);
    }
    if (tau == 0.0) continue;
    // v = (1, col[k+1..n)); apply H = I - tau v v^T to the trailing columns.
    for (std::size_t j = k + 1; j < n; ++j) {
      double* cj = qr_.data() + j * n;
      const double s =
          cj[k] + simd::dot({col + k + 1, len - 1}, {cj + k + 1, len - 1});
      const double f = -tau * s;
      cj[k] += f;
      simd::axpy(f, {col + k + 1, len - 1}, {cj + k + 1, len - 1});
    }
  }
  for (std::size_t k = 0; k < n; ++k) qr_[k * n + k] = diag_[k];
}

double HouseholderQr::pivot(std::size_t k) const { return std::abs(diag_.at(k)); }

Vector HouseholderQr::solve(std::span<const double> b) const {
  const std::size_t n = n_;
  if (b.size() != n) throw InputError("QR solve: right-hand side length mismatch");
  Vector x(b.begin(), b.end());
  // x <- Q^T b
  for (std::size_t k = 0; k < n; ++k) {
    if (tau_[k] == 0.0) continue;
    const double* col = qr_.data() + k * n;
    const std::size_t len = n - k - 1;
    const double s = x[k] + simd::dot({col + k + 1, len}, {x.data() + k + 1, len});
    const double f = -tau_[k] * s;
    x[k] += f;
    simd::axpy(f, {col + k + 1, len}, {x.data() + k + 1, len});
  }
  // Back substitution, column oriented: R is stored column-major.
  for (std::size_t k = n; k-- > 0;) {
    const double* col = qr_.data() + k * n;
    x[k] /= col[k];
    if (k > 0) simd::axpy(-x[k], {col, k}, {x.data(), k});
  }
  return x;
}

void require_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) throw InputError("matrix is not square");
  double amax = 1.0;
  for (double v : a.data()) amax = std::max(amax, std::abs(v));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (!(std::abs(a(i, j) - a(j, i)) <= tol * amax))
        throw InputError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
}

SymmetricEigen symmetric_eigen(const Matrix& input, bool want_vectors) {
  require_symmetric(input);
  const std::size_t n = input.rows();
  if (n == 0) throw InputError("eigensolver needs a nonempty matrix");
  Matrix a = input;
  Matrix v = want_vectors ? Matrix::identity(n) : Matrix();

  const double norm2 = std::max(std::pow(frobenius_norm(a), 2), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (off <= 1e-30 * norm2) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]);
  if (want_vectors) {
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double min_eigenvalue_sym(const Matrix& a) { return symmetric_eigen(a).values.front(); }

double power_spectral_norm(const Matrix& a, double rel_tol, std::size_t max_iter) {
  require_symmetric(a);
  const std::size_t n = a.rows();
  if (n == 0) return 0.0;
  if (frobenius_norm(a) == 0.0) return 0.0;

  // Fixed start vector so the result is reproducible.
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  Vector v(n);
  for (auto& e : v) e = unif(rng);
  double nv = std::sqrt(simd::dot(v, v));
  for (auto& e : v) e /= nv;

  Vector u(n), w(n);
  double rho = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    simd::gemv(a.data(), n, n, v, u);
    simd::gemv(a.data(), n, n, u, w);
    rho = simd::dot(u, u);  // v^T A^2 v
    if (rho == 0.0) {
      // Start vector fell in the null space; nudge it.
      for (std::size_t i = 0; i < n; ++i) v[i] += unif(rng);
      nv = std::sqrt(simd::dot(v, v));
      for (auto& e : v) e /= nv;
      continue;
    }
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) res2 += (w[i] - rho * v[i]) * (w[i] - rho * v[i]);
    const double nw = std::sqrt(simd::dot(w, w));
    if (std::sqrt(res2) <= rel_tol * rho) break;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  return std::sqrt(rho);
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InputError("multiply: inner dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) simd::axpy(aik, b.row(k), c.row(i));
    }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  Vector y(a.rows());
  simd::gemv(a.data(), a.rows(), a.cols(), x, y);
  return y;
}

}  // namespace ridgekm
