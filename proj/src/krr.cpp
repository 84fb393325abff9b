#include "ridgekm/krr.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "ridgekm/error.hpp"
#include "ridgekm/linalg.hpp"
#include "ridgekm/simd.hpp"
#include "ridgekm/text_io.hpp"

namespace ridgekm {

namespace {

Matrix shifted(const Matrix& k, double scale, double shift) {
  Matrix a = k;
  for (double& v : a.data()) v *= scale;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += shift;
  return a;
}

double norm2(std::span<const double> v) { return std::sqrt(simd::dot(v, v)); }

}  // namespace

void RegularizedProblem::validate() const {
  if (!(lambda > 0.0)) throw InputError("regularization lambda must be positive");
  if (y.empty() || k.n() != y.size()) throw InputError("Gram matrix and targets disagree in size");
}

FittedModel::FittedModel(ThetaParams theta, Matrix support, Vector a, double lambda)
    : theta_(std::move(theta)), support_(std::move(support)), a_(std::move(a)), lambda_(lambda) {
  if (!(lambda_ > 0.0)) throw InputError("model lambda must be positive");
  if (support_.rows() != a_.size()) throw InputError("model: one coefficient per support point");
  if (support_.cols() != theta_.d()) throw InputError("model: support dimension differs from theta");
}

Vector solve_regularized(const GramMatrix& k, std::span<const double> y, double lambda) {
  const double lambda_n = lambda * static_cast<double>(y.size());
  const Matrix system = shifted(k.matrix(), 1.0, lambda_n);
  const HouseholderQr qr(system);
  Vector a = qr.solve(y);

  Vector r = multiply(system, a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  if (!(norm2(r) <= 1e-8 * norm2(y) || norm2(y) == 0.0))
    throw SolverError("regularized solve residual too large", 0);
  return a;
}

FittedModel fit(const ThetaParams& theta, const Matrix& x, std::span<const double> y, double lambda) {
  if (!(lambda > 0.0)) throw InputError("fit: lambda must be positive");
  if (x.rows() == 0 || x.rows() != y.size()) throw InputError("fit: need one target per sample point");
  const GramMatrix k = gram(theta, x);
  Vector a = solve_regularized(k, y, lambda);
  return FittedModel(theta, x, std::move(a), lambda);
}

double predict(const FittedModel& model, std::span<const double> x) {
  if (x.size() != model.theta().d()) throw InputError("predict: point dimension does not match model");
  double f = 0.0;
  const auto a = model.a();
  for (std::size_t i = 0; i < a.size(); ++i) f += a[i] * eval_kernel(model.theta(), x, model.support().row(i));
  return f;
}

double closed_form_loss(const RegularizedProblem& problem) {
  problem.validate();
  const Vector a = solve_regularized(problem.k, problem.y, problem.lambda);
  return problem.lambda * simd::dot(problem.y, a);
}

double closed_form_loss_normalized(const RegularizedProblem& problem) {
  problem.validate();
  const double n = static_cast<double>(problem.n());
  const HouseholderQr qr(shifted(problem.k.matrix(), 1.0 / (problem.lambda * n), 1.0));
  const Vector v = qr.solve(problem.y);
  return simd::dot(problem.y, v) / n;
}

double direct_loss(const FittedModel& model, const Matrix& x, std::span<const double> y) {
  if (x.rows() != y.size() || x.rows() != model.a().size())
    throw InputError("direct_loss: sample does not match the model");
  const GramMatrix k = gram(model.theta(), x);
  const Vector ka = multiply(k.matrix(), model.a());
  double fit_err = 0.0;
  for (std::size_t i = 0; i < ka.size(); ++i) fit_err += (ka[i] - y[i]) * (ka[i] - y[i]);
  const double n = static_cast<double>(y.size());
  return fit_err / n + model.lambda() * simd::dot(model.a(), ka);
}

double spectral_norm(const GramMatrix& k) { return power_spectral_norm(k.matrix()); }

double feature_spectral_norm(const Matrix& phi, std::span<const double> c) {
  const std::size_t m = phi.cols();
  if (c.size() != m) throw InputError("feature_spectral_norm: one weight per feature column");
  // Nonzero spectrum of Phi D Phi^T equals that of G^{1/2} D G^{1/2}, G = Phi^T Phi.
  Matrix g(m, m);
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) g(a, b) += phi(i, a) * phi(i, b);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) g(b, a) = g(a, b);
  const SymmetricEigen eg = symmetric_eigen(g, true);
  Matrix root(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k)
        s += eg.vectors(a, k) * std::sqrt(std::max(eg.values[k], 0.0)) * eg.vectors(b, k);
      root(a, b) = s;
    }
  Matrix s(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      double v = 0.0;
      for (std::size_t k = 0; k < m; ++k) v += root(a, k) * c[k] * root(k, b);
      s(a, b) = s(b, a) = v;
    }
  const Vector ev = symmetric_eigen(s).values;
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double neumann_loss(const RegularizedProblem& problem, std::size_t order) {
  problem.validate();
  return neumann_loss(problem, order, spectral_norm(problem.k));
}

double neumann_loss(const RegularizedProblem& problem, std::size_t order, double k_norm) {
  problem.validate();
  const std::size_t n = problem.n();
  const double lambda_n = problem.lambda * static_cast<double>(n);
  if (!(lambda_n > k_norm)) throw DivergenceError(k_norm, lambda_n);

  // v <- y - (K / lambda N) v, repeated `order` times, gives the truncated series times y.
  const Matrix& k = problem.k.matrix();
  Vector v = problem.y;
  Vector kv(n);
  for (std::size_t j = 0; j < order; ++j) {
    simd::gemv(k.data(), n, n, v, kv);
    for (std::size_t i = 0; i < n; ++i) v[i] = problem.y[i] - kv[i] / lambda_n;
  }
  return simd::dot(problem.y, v) / static_cast<double>(n);
}

double neumann_loss_eigen(const RegularizedProblem& problem, std::size_t order) {
  problem.validate();
  const std::size_t n = problem.n();
  const double lambda_n = problem.lambda * static_cast<double>(n);
  const SymmetricEigen eig = symmetric_eigen(problem.k.matrix(), true);
  const double k_norm = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  if (!(lambda_n > k_norm)) throw DivergenceError(k_norm, lambda_n);
  double total = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    double proj = 0.0;
    for (std::size_t i = 0; i < n; ++i) proj += eig.vectors(i, e) * problem.y[i];
    const double t = -eig.values[e] / lambda_n;
    double series = 0.0;
    double power = 1.0;
    for (std::size_t j = 0; j <= order; ++j) {
      series += power;
      power *= t;
    }
    total += proj * proj * series;
  }
  return total / static_cast<double>(n);
}

void write_model(std::ostream& out, const FittedModel& model) {
  out << "model " << model.support().rows() << ' ' << model.support().cols() << '\n';
  out << "lambda " << io::format_double(model.lambda()) << '\n';
  write_theta(out, model.theta());
  out << "support\n";
  for (std::size_t i = 0; i < model.support().rows(); ++i) out << io::join(model.support().row(i)) << '\n';
  out << "coefficients\n";
  for (double a : model.a()) out << io::format_double(a) << '\n';
}

FittedModel read_model(std::istream& in) {
  io::LineReader reader(in);
  return read_model(reader);
}

FittedModel read_model(io::LineReader& reader) {
  auto tok = io::split_ws(reader.next("model header"));
  if (tok.size() != 3 || tok[0] != "model") throw ParseError("expected 'model <N> <d>'", reader.line());
  const long long n = io::parse_int(tok[1], reader.line());
  const long long d = io::parse_int(tok[2], reader.line());
  if (n < 1 || d < 1) throw ParseError("bad model sizes", reader.line());
  const std::string lambda_line = reader.next("lambda");
  tok = io::split_ws(lambda_line);
  if (tok.size() != 2 || tok[0] != "lambda") throw ParseError("expected 'lambda <value>'", reader.line());
  const double lambda = io::parse_double(tok[1], reader.line());
  ThetaParams theta = read_theta(reader);

  if (io::trim(reader.next("support")) != "support") throw ParseError("expected 'support'", reader.line());
  Matrix support(static_cast<std::size_t>(n), static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < support.rows(); ++i) {
    const std::string line = reader.next("support row");
    const auto f = io::split_ws(line);
    if (f.size() != support.cols()) throw ParseError("support row has wrong arity", reader.line());
    for (std::size_t k = 0; k < f.size(); ++k) support(i, k) = io::parse_double(f[k], reader.line());
  }
  if (io::trim(reader.next("coefficients")) != "coefficients")
    throw ParseError("expected 'coefficients'", reader.line());
  Vector a(static_cast<std::size_t>(n));
  for (auto& v : a) v = io::parse_double(reader.next("coefficient"), reader.line());
  try {
    return FittedModel(std::move(theta), std::move(support), std::move(a), lambda);
  } catch (const InputError& e) {
    throw ParseError(e.what(), reader.line());
  }
}

}  // namespace ridgekm
