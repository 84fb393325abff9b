#include "ridgekm/features.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "ridgekm/error.hpp"
#include "ridgekm/text_io.hpp"

namespace ridgekm {

Activation Activation::custom(std::string name, std::function<double(double)> fn) {
  if (!fn) throw InputError("custom activation needs a callable");
  return Activation(Kind::Custom, std::move(name), std::move(fn));
}

Activation Activation::from_name(std::string_view name) {
  if (name == "cos" || name == "cosine") return cosine();
  if (name == "relu" || name == "ReLU") return relu();
  throw InputError("unknown activation '" + std::string(name) + "'");
}

double Activation::operator()(double t) const {
  switch (kind_) {
    case Kind::Cosine:
      return std::cos(t);
    case Kind::ReLU:
      return t > 0.0 ? t : 0.0;
    case Kind::Custom:
      break;
  }
  return fn_(t);
}

ThetaParams::ThetaParams(Vector c, Vector b, Matrix w, Activation activation, bool positive)
    : c_(std::move(c)),
      b_(std::move(b)),
      w_(std::move(w)),
      activation_(std::move(activation)),
      positive_(positive) {
  if (b_.size() != c_.size() || w_.rows() != c_.size())
    throw InputError("theta: c, b and w must all have m entries");
  if (w_.cols() == 0) throw InputError("theta: input dimension must be at least 1");
  if (positive_ && std::any_of(c_.begin(), c_.end(), [](double v) { return !(v > 0.0); }))
    throw InputError("theta: positivity requested but some c_j <= 0");
}

double ThetaParams::feature(std::size_t j, std::span<const double> x) const {
  const auto wj = w_.row(j);
  double t = 0.0;
  for (std::size_t k = 0; k < wj.size(); ++k) t += wj[k] * x[k];
  return activation_(t + b_[j]);
}

ThetaParams ThetaParams::with_activation(Activation activation) const {
  return ThetaParams(c_, b_, w_, std::move(activation), positive_);
}

GramMatrix GramMatrix::from_matrix(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InputError("Gram matrix must be square and nonempty");
  double scale = 1.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  Matrix k = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      if (!(std::abs(a(i, j) - a(j, i)) <= 1e-12 * scale))
        throw InputError("Gram matrix is not symmetric");
      k(j, i) = k(i, j);
    }
  return GramMatrix(std::move(k));
}

double eval_kernel(const ThetaParams& theta, std::span<const double> x,
                   std::span<const double> y) {
  if (x.size() != theta.d() || y.size() != theta.d())
    throw InputError("eval_kernel: point dimension does not match theta.d = " +
                     std::to_string(theta.d()));
  const auto c = theta.c();
  double k = 0.0;
  for (std::size_t j = 0; j < theta.m(); ++j) {
    // sx * sy is commutative in IEEE arithmetic, so k(x,y) == k(y,x) bit for bit.
    k += c[j] * (theta.feature(j, x) * theta.feature(j, y));
  }
  return k;
}

Matrix feature_matrix(const ThetaParams& theta, const Matrix& x) {
  if (x.cols() != theta.d())
    throw InputError("feature_matrix: sample dimension does not match theta.d");
  Matrix phi(x.rows(), theta.m());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < theta.m(); ++j) phi(i, j) = theta.feature(j, x.row(i));
  return phi;
}

GramMatrix gram(const ThetaParams& theta, const Matrix& x) {
  if (x.rows() == 0) throw InputError("gram: empty sample");
  const Matrix phi = feature_matrix(theta, x);
  const std::size_t n = x.rows();
  const auto c = theta.c();
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pi = phi.row(i);
    for (std::size_t l = i; l < n; ++l) {
      const auto pl = phi.row(l);
      double s = 0.0;
      for (std::size_t j = 0; j < theta.m(); ++j) s += c[j] * (pi[j] * pl[j]);
      k(i, l) = s;
      k(l, i) = s;
    }
  }
  return GramMatrix(std::move(k));
}

void write_theta(std::ostream& out, const ThetaParams& theta) {
  out << "theta " << theta.m() << ' ' << theta.d() << ' ' << theta.activation().name() << ' '
      << (theta.positive() ? "positive" : "signed") << '\n';
  for (std::size_t j = 0; j < theta.m(); ++j) {
    out << io::format_double(theta.c()[j]) << ' ' << io::format_double(theta.b()[j]) << ' '
        << io::join(theta.w(j)) << '\n';
  }
}

ThetaParams read_theta(std::istream& in) {
  io::LineReader reader(in);
  return read_theta(reader);
}

ThetaParams read_theta(io::LineReader& reader) {
  const std::string header = reader.next("theta header");
  const auto tok = io::split_ws(header);
  if (tok.size() != 5 || tok[0] != "theta")
    throw ParseError("expected 'theta <m> <d> <activation> <positive|signed>'", reader.line());
  const long long m = io::parse_int(tok[1], reader.line());
  const long long d = io::parse_int(tok[2], reader.line());
  if (m < 0 || d < 1) throw ParseError("bad theta sizes", reader.line());
  Activation act = Activation::cosine();
  try {
    act = Activation::from_name(tok[3]);
  } catch (const InputError&) {
    throw ParseError("unknown activation '" + std::string(tok[3]) + "'", reader.line());
  }
  bool positive = false;
  if (tok[4] == "positive") positive = true;
  else if (tok[4] != "signed") throw ParseError("expected positive|signed", reader.line());

  Vector c(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(m));
  Matrix w(static_cast<std::size_t>(m), static_cast<std::size_t>(d));
  for (std::size_t j = 0; j < c.size(); ++j) {
    const std::string line = reader.next("theta term");
    const auto f = io::split_ws(line);
    if (f.size() != static_cast<std::size_t>(d) + 2)
      throw ParseError("theta term needs " + std::to_string(d + 2) + " fields", reader.line());
    c[j] = io::parse_double(f[0], reader.line());
    b[j] = io::parse_double(f[1], reader.line());
    for (std::size_t k = 0; k < w.cols(); ++k) w(j, k) = io::parse_double(f[k + 2], reader.line());
  }
  try {
    return ThetaParams(std::move(c), std::move(b), std::move(w), std::move(act), positive);
  } catch (const InputError& e) {
    throw ParseError(e.what(), reader.line());
  }
}

}  // namespace ridgekm
