#pragma once

// Independent reference computations used as test oracles.

#include <cmath>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "ridgekm/matrix.hpp"

namespace oracle {

using ridgekm::Matrix;
using ridgekm::Vector;

/// Gaussian elimination with partial pivoting on a dense copy.
inline Vector gauss_solve(Matrix a, Vector b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

inline Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = g(rng);
  return m;
}

inline Vector random_vector(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vector v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

/// B B^T + shift I
inline Matrix random_spd(std::size_t n, std::mt19937_64& rng, double shift = 0.0) {
  const Matrix b = random_matrix(n, n, rng);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b(i, k) * b(j, k);
      a(i, j) = s + (i == j ? shift : 0.0);
    }
  return a;
}

inline Matrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  Matrix a = random_matrix(n, n, rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
  return a;
}

inline double norm2(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Trapezoid rule on a periodic integrand over [0, 2 pi), n nodes.
template <class F>
double periodic_mean(F f, std::size_t n = 4096) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += f(2.0 * M_PI * (static_cast<double>(k) + 0.5) / static_cast<double>(n));
  return s / static_cast<double>(n);
}

}  // namespace oracle
