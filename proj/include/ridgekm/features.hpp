#pragma once

// Ridge kernels  k(x, y | theta) = sum_j c_j s(<w_j, x> + b_j) s(<w_j, y> + b_j)
// and their Gram matrices.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "ridgekm/matrix.hpp"

namespace ridgekm {

namespace io {
class LineReader;
}

/// Scalar activation s: R -> R applied to ridge arguments.
class Activation {
 public:
  enum class Kind { Cosine, ReLU, Custom };

  static Activation cosine() { return Activation(Kind::Cosine, "cos", {}); }
  static Activation relu() { return Activation(Kind::ReLU, "relu", {}); }
  /// Any continuous scalar function. The caller vouches that it is not a
  /// polynomial; that cannot be checked from a black box.
  static Activation custom(std::string name, std::function<double(double)> fn);
  /// "cos" / "cosine" / "relu"; throws InputError otherwise.
  static Activation from_name(std::string_view name);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  double operator()(double t) const;

 private:
  Activation(Kind kind, std::string name, std::function<double(double)> fn)
      : kind_(kind), name_(std::move(name)), fn_(std::move(fn)) {}

  Kind kind_;
  std::string name_;
  std::function<double(double)> fn_;
};

/// Feature parameter bundle theta = (c, w, b, activation) with m terms in R^d.
class ThetaParams {
 public:
  /// `w` is m x d (row j = w_j). With `positive` set every c_j must be > 0.
  ThetaParams(Vector c, Vector b, Matrix w, Activation activation, bool positive = false);

  std::size_t m() const noexcept { return c_.size(); }
  std::size_t d() const noexcept { return w_.cols(); }
  std::span<const double> c() const noexcept { return c_; }
  std::span<const double> b() const noexcept { return b_; }
  const Matrix& w() const noexcept { return w_; }
  std::span<const double> w(std::size_t j) const { return w_.row(j); }
  const Activation& activation() const noexcept { return activation_; }
  bool positive() const noexcept { return positive_; }

  /// s(<w_j, x> + b_j)
  double feature(std::size_t j, std::span<const double> x) const;

  /// Copy with a different activation (same numbers).
  ThetaParams with_activation(Activation activation) const;

 private:
  Vector c_;
  Vector b_;
  Matrix w_;
  Activation activation_;
  bool positive_;
};

/// Exactly symmetric N x N kernel matrix.
class GramMatrix {
 public:
  /// Mirrors the upper triangle after checking |a_ij - a_ji| <= 1e-12 scale.
  static GramMatrix from_matrix(const Matrix& a);

  std::size_t n() const noexcept { return k_.rows(); }
  const Matrix& matrix() const noexcept { return k_; }
  double operator()(std::size_t i, std::size_t j) const { return k_(i, j); }

 private:
  friend GramMatrix gram(const ThetaParams&, const Matrix&);
  explicit GramMatrix(Matrix k) : k_(std::move(k)) {}
  Matrix k_;
};

double eval_kernel(const ThetaParams& theta, std::span<const double> x,
                   std::span<const double> y);

/// Phi(i, j) = s(<w_j, x_i> + b_j) for the rows x_i of X.
Matrix feature_matrix(const ThetaParams& theta, const Matrix& x);

/// K(i, j) = eval_kernel(theta, x_i, x_j), upper triangle computed and mirrored.
GramMatrix gram(const ThetaParams& theta, const Matrix& x);

/// Text record: "theta <m> <d> <activation> <positive|signed>" then m lines "c b w_1 .. w_d".
void write_theta(std::ostream& out, const ThetaParams& theta);
/// Custom activations cannot be read back; only cos and relu are recognized.
ThetaParams read_theta(std::istream& in);
ThetaParams read_theta(io::LineReader& reader);

}  // namespace ridgekm
