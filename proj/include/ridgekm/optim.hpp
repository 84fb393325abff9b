#pragma once

// Feature-parameter search: minimizes the training loss over theta with a
// limited-memory quasi-Newton method (two-loop recursion, Armijo backtracking,
// central finite-difference gradients).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ridgekm/features.hpp"

namespace ridgekm {

struct LossMode {
  enum class Kind { ClosedFormQR, Neumann };
  Kind kind = Kind::ClosedFormQR;
  std::size_t order = 5;  ///< truncation order L, Neumann only

  static LossMode closed_form() { return {}; }
  static LossMode neumann(std::size_t order) { return {Kind::Neumann, order}; }
  std::string name() const;
};

struct OptimConfig {
  std::size_t max_iters = 100;
  double grad_eps = 1e-6;  ///< FD step is grad_eps * (1 + |v_i|)
  double tol = 1e-10;      ///< stop when a step lowers the loss by less than tol * max(1, |loss|)
  std::size_t memory = 7;
  LossMode loss_mode;
  bool positivity = true;  ///< optimize rho with c = rho^2

  void validate() const;
};

enum class OptimStatus { Converged, MaxIterations, LineSearchFailed, Diverged, NoProgress };

std::string_view status_name(OptimStatus s);

/// Divergence and no-progress are the failure outcomes of a run.
inline bool is_failure(OptimStatus s) {
  return s == OptimStatus::Diverged || s == OptimStatus::NoProgress;
}

struct TraceRow {
  std::size_t iteration;
  double loss;
  double step;
  std::string status;
};

struct OptimResult {
  Vector x;
  double loss = 0.0;
  double initial_loss = 0.0;
  OptimStatus status = OptimStatus::NoProgress;
  std::size_t iterations = 0;  ///< accepted steps
  std::size_t evaluations = 0;
  std::size_t rejected = 0;    ///< evaluations that returned a non-finite loss
  std::vector<TraceRow> trace;
};

/// Objective for minimize_flat: +inf marks a rejected point.
using FlatObjective = std::function<double(std::span<const double>)>;

/// Central differences with step grad_eps * (1 + |x_i|); one-sided where only
/// one neighbour is finite. Returns false when some coordinate has no finite
/// neighbour at all.
bool fd_gradient(const FlatObjective& f, std::span<const double> x, double fx, double grad_eps,
                 std::span<double> grad, std::size_t* evaluations = nullptr);

/// `guard`, when given, grows toward the region where f is rejected. After a
/// line search runs into that region, the next search direction has its
/// component along grad(guard) removed, so iterates slide along the boundary
/// instead of stalling against it.
OptimResult minimize_flat(const FlatObjective& f, Vector x0, const OptimConfig& config,
                          const FlatObjective& guard = {});

/// Packed layout (c_1..c_m, b_1..b_m, w_1..w_m); length m (2 + d). With
/// positivity the first block holds rho_j = sqrt(c_j).
Vector pack_theta(const ThetaParams& theta, bool positivity);
ThetaParams unpack_theta(std::span<const double> flat, std::size_t m, std::size_t d,
                         const Activation& activation, bool positivity);

/// c_j ~ U(0, 1), b_j ~ N(0, 1), w_ij ~ N(0, 1); deterministic in `seed`.
ThetaParams init_theta(std::size_t m, std::size_t d, std::uint64_t seed,
                       const Activation& activation = Activation::cosine());

/// Training loss at a packed theta. Throws DivergenceError in Neumann mode
/// outside lambda N > ||K||.
double objective(std::span<const double> flat, const Matrix& x, std::span<const double> y,
                 double lambda, const OptimConfig& config, std::size_t m,
                 const Activation& activation);

struct ThetaSearch {
  ThetaParams theta;
  double loss;
  OptimResult run;
  std::uint64_t seed;
  bool rescaled_init = false;  ///< c was shrunk to start inside lambda N > ||K||
};

/// One run from init_theta(m, d, seed). In Neumann mode an initial point with
/// ||K|| >= lambda N has its weights c scaled so that ||K|| = lambda N / 2.
ThetaSearch minimize(const Matrix& x, std::span<const double> y, double lambda,
                     const OptimConfig& config, std::uint64_t seed, std::size_t m,
                     const Activation& activation);

/// Independent runs, one per seed; the lowest finite loss wins (first on ties).
std::vector<ThetaSearch> minimize_runs(const Matrix& x, std::span<const double> y, double lambda,
                                       const OptimConfig& config, std::span<const std::uint64_t> seeds,
                                       std::size_t m, const Activation& activation);
const ThetaSearch& best_run(const std::vector<ThetaSearch>& runs);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace ridgekm
