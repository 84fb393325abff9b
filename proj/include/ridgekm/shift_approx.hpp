#pragma once

// Cosine ridge-kernel approximation of shift-invariant kernels
// k(x, y) = K(x - y): random Fourier sampling, equispaced phase averaging,
// and sup-norm error on a lattice over a compact box.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ridgekm/features.hpp"

namespace ridgekm {

class ShiftInvariantKernel {
 public:
  /// K(u) = exp(-gamma u^T u), gamma > 0.
  static ShiftInvariantKernel gaussian(double gamma);
  static ShiftInvariantKernel custom(std::function<double(std::span<const double>)> profile);

  bool is_gaussian() const noexcept { return gamma_ > 0.0; }
  double gamma() const noexcept { return gamma_; }

  double profile(std::span<const double> u) const;
  double operator()(std::span<const double> x, std::span<const double> y) const;

 private:
  double gamma_ = 0.0;
  std::function<double(std::span<const double>)> custom_;
};

struct CompactBox {
  Vector lo;
  Vector hi;

  /// Same interval [lo, hi] in every one of `dim` coordinates.
  static CompactBox cube(std::size_t dim, double lo, double hi);

  std::size_t dim() const noexcept { return lo.size(); }
  void validate() const;
  /// Tensor lattice with `per_dim` nodes per axis, endpoints included.
  Matrix lattice(std::size_t per_dim) const;
};

struct ApproxConfig {
  std::size_t m1 = 1000;
  std::size_t m2 = 3;
  std::uint64_t seed = 0;
};

/// Random Fourier features for the Gaussian: w_j ~ N(0, 2 gamma I),
/// b_j ~ U[0, 2 pi), c_j = 2 / M1, cosine activation.
ThetaParams sample_rr_theta(double gamma, std::size_t m1, std::size_t d, std::uint64_t seed);

/// (1/M2) sum_{k=1}^{M2} cos(alpha + t_k) cos(beta + t_k), t_k = 2 pi k / M2.
double phase_average(double alpha, double beta, std::size_t m2);

/// Replaces each term's phase by the M2 equispaced phases t_k, weights c_j / M2.
/// The result equals sum_j (c_j / 2) cos(<w_j, x - y>) for any M2 >= 3.
ThetaParams build_phase_discretized_kernel(const ThetaParams& base, std::size_t m2);

/// max over lattice pairs (x, y) in box x box of |target(x, y) - k(x, y | theta)|.
double sup_error(const ShiftInvariantKernel& target, const ThetaParams& theta,
                 const CompactBox& box, std::size_t grid_per_dim = 17);

struct ApproxRow {
  std::size_t m1;
  std::uint64_t seed;
  double sup_error;
};

/// One row per (M1, seed) pair, seeds base_seed .. base_seed + n_seeds - 1.
/// With m2 >= 3 the sampled phases are replaced by m2 equispaced phases;
/// m2 = 0 keeps the random phases.
std::vector<ApproxRow> approx_sweep(double gamma, std::span<const std::size_t> m1_list,
                                    std::size_t n_seeds, std::uint64_t base_seed,
                                    const CompactBox& box, std::size_t grid_per_dim,
                                    std::size_t m2 = 0);

}  // namespace ridgekm
