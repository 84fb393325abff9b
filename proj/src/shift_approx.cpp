#include "ridgekm/shift_approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ridgekm/error.hpp"
#include "ridgekm/simd.hpp"

namespace ridgekm {

ShiftInvariantKernel ShiftInvariantKernel::gaussian(double gamma) {
  if (!(gamma > 0.0)) throw InputError("Gaussian kernel needs gamma > 0");
  ShiftInvariantKernel k;
  k.gamma_ = gamma;
  return k;
}

ShiftInvariantKernel ShiftInvariantKernel::custom(
    std::function<double(std::span<const double>)> profile) {
  if (!profile) throw InputError("custom shift-invariant kernel needs a profile");
  ShiftInvariantKernel k;
  k.custom_ = std::move(profile);
  return k;
}

double ShiftInvariantKernel::profile(std::span<const double> u) const {
  if (is_gaussian()) {
    double s = 0.0;
    for (double v : u) s += v * v;
    return std::exp(-gamma_ * s);
  }
  return custom_(u);
}

double ShiftInvariantKernel::operator()(std::span<const double> x,
                                        std::span<const double> y) const {
  if (x.size() != y.size()) throw InputError("shift-invariant kernel: dimension mismatch");
  Vector u(x.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = x[i] - y[i];
  return profile(u);
}

CompactBox CompactBox::cube(std::size_t dim, double lo, double hi) {
  CompactBox box{Vector(dim, lo), Vector(dim, hi)};
  box.validate();
  return box;
}

void CompactBox::validate() const {
  if (lo.empty() || lo.size() != hi.size()) throw InputError("box: bounds must be nonempty and equal length");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i])) throw InputError("box: lo must not exceed hi");
}

Matrix CompactBox::lattice(std::size_t per_dim) const {
  validate();
  if (per_dim < 2) throw InputError("lattice needs at least 2 nodes per axis");
  const std::size_t d = dim();
  std::size_t count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= per_dim;
  Matrix pts(count, d);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t p = 0; p < count; ++p) {
    for (std::size_t k = 0; k < d; ++k) {
      const double t = static_cast<double>(idx[k]) / static_cast<double>(per_dim - 1);
      pts(p, k) = idx[k] + 1 == per_dim ? hi[k] : lo[k] + t * (hi[k] - lo[k]);
    }
    for (std::size_t k = 0; k < d; ++k) {
      if (++idx[k] < per_dim) break;
      idx[k] = 0;
    }
  }
  return pts;
}

ThetaParams sample_rr_theta(double gamma, std::size_t m1, std::size_t d, std::uint64_t seed) {
  if (!(gamma > 0.0)) throw InputError("sample_rr_theta: gamma must be positive");
  if (m1 < 1) throw InputError("sample_rr_theta: need M1 >= 1");
  if (d < 1) throw InputError("sample_rr_theta: need d >= 1");
  std::mt19937_64 rng(seed);
  // Spectral density of exp(-gamma |u|^2) is N(0, 2 gamma I).
  std::normal_distribution<double> freq(0.0, std::sqrt(2.0 * gamma));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  Matrix w(m1, d);
  Vector b(m1);
  for (std::size_t j = 0; j < m1; ++j) {
    for (std::size_t k = 0; k < d; ++k) w(j, k) = freq(rng);
    b[j] = phase(rng);
  }
  Vector c(m1, 2.0 / static_cast<double>(m1));
  return ThetaParams(std::move(c), std::move(b), std::move(w), Activation::cosine(), true);
}

double phase_average(double alpha, double beta, std::size_t m2) {
  if (m2 < 3) throw InputError("phase_average: need M2 >= 3");
  double s = 0.0;
  for (std::size_t k = 1; k <= m2; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m2);
    s += std::cos(alpha + t) * std::cos(beta + t);
  }
  return s / static_cast<double>(m2);
}

ThetaParams build_phase_discretized_kernel(const ThetaParams& base, std::size_t m2) {
  if (base.activation().kind() != Activation::Kind::Cosine)
    throw InputError("phase discretization needs a cosine activation");
  if (m2 < 3) throw InputError("phase discretization needs M2 >= 3");
  const std::size_t m = base.m();
  const std::size_t d = base.d();
  Vector c(m * m2), b(m * m2);
  Matrix w(m * m2, d);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 1; k <= m2; ++k) {
      const std::size_t t = j * m2 + (k - 1);
      c[t] = base.c()[j] / static_cast<double>(m2);
      b[t] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m2);
      for (std::size_t i = 0; i < d; ++i) w(t, i) = base.w()(j, i);
    }
  }
  return ThetaParams(std::move(c), std::move(b), std::move(w), Activation::cosine(),
                     base.positive());
}

double sup_error(const ShiftInvariantKernel& target, const ThetaParams& theta,
                 const CompactBox& box, std::size_t grid_per_dim) {
  if (box.dim() != theta.d()) throw InputError("sup_error: box dimension does not match theta");
  const Matrix pts = box.lattice(grid_per_dim);
  const Matrix phi = feature_matrix(theta, pts);
  Matrix weighted = phi;
  for (std::size_t p = 0; p < weighted.rows(); ++p)
    for (std::size_t j = 0; j < theta.m(); ++j) weighted(p, j) *= theta.c()[j];

  double worst = 0.0;
  for (std::size_t p = 0; p < pts.rows(); ++p) {
    for (std::size_t q = 0; q < pts.rows(); ++q) {
      const double approx = simd::dot(weighted.row(p), phi.row(q));
      worst = std::max(worst, std::abs(target(pts.row(p), pts.row(q)) - approx));
    }
  }
  return worst;
}

std::vector<ApproxRow> approx_sweep(double gamma, std::span<const std::size_t> m1_list,
                                    std::size_t n_seeds, std::uint64_t base_seed,
                                    const CompactBox& box, std::size_t grid_per_dim, std::size_t m2) {
  const auto target = ShiftInvariantKernel::gaussian(gamma);
  std::vector<ApproxRow> rows;
  for (std::size_t m1 : m1_list) {
    for (std::size_t s = 0; s < n_seeds; ++s) {
      const std::uint64_t seed = base_seed + s;
      const auto theta = sample_rr_theta(gamma, m1, box.dim(), seed);
      const double err = m2 == 0 ? sup_error(target, theta, box, grid_per_dim)
                                 : sup_error(target, build_phase_discretized_kernel(theta, m2), box, grid_per_dim);
      rows.push_back({m1, seed, err});
    }
  }
  return rows;
}

}  // namespace ridgekm
