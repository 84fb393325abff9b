#include "ridgekm/optim.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <random>

#include "ridgekm/error.hpp"
#include "ridgekm/krr.hpp"
#include "ridgekm/simd.hpp"
#include "ridgekm/text_io.hpp"

namespace ridgekm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;

double dot(std::span<const double> a, std::span<const double> b) { return simd::dot(a, b); }

struct Pair {
  Vector s;
  Vector y;
  double rho;
};

// H g by the two-loop recursion; H0 = (s^T y / y^T y) I, or I / max(1, |g|) with no history.
Vector two_loop(const std::deque<Pair>& hist, std::span<const double> g) {
  Vector q(g.begin(), g.end());
  std::vector<double> alpha(hist.size());
  for (std::size_t i = hist.size(); i-- > 0;) {
    alpha[i] = hist[i].rho * dot(hist[i].s, q);
    simd::axpy(-alpha[i], hist[i].y, q);
  }
  double scale;
  if (hist.empty()) {
    scale = 1.0 / std::max(1.0, std::sqrt(dot(g, g)));
  } else {
    const Pair& last = hist.back();
    scale = dot(last.s, last.y) / dot(last.y, last.y);
  }
  for (double& v : q) v *= scale;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    const double beta = hist[i].rho * dot(hist[i].y, q);
    simd::axpy(alpha[i] - beta, hist[i].s, q);
  }
  return q;
}

}  // namespace

std::string LossMode::name() const {
  return kind == Kind::ClosedFormQR ? "qr" : "neumann(L=" + std::to_string(order) + ")";
}

void OptimConfig::validate() const {
  if (max_iters < 1) throw InputError("optimizer needs max_iters >= 1");
  if (!(grad_eps > 0.0)) throw InputError("optimizer needs grad_eps > 0");
  if (memory < 1) throw InputError("optimizer needs memory >= 1");
  if (!(tol >= 0.0)) throw InputError("optimizer needs tol >= 0");
}

std::string_view status_name(OptimStatus s) {
  switch (s) {
    case OptimStatus::Converged:
      return "converged";
    case OptimStatus::MaxIterations:
      return "max-iterations";
    case OptimStatus::LineSearchFailed:
      return "line-search-failed";
    case OptimStatus::Diverged:
      return "diverged";
    case OptimStatus::NoProgress:
      break;
  }
  return "no-progress";
}

bool fd_gradient(const FlatObjective& f, std::span<const double> x, double fx, double grad_eps,
                 std::span<double> grad, std::size_t* evaluations) {
  Vector probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = grad_eps * (1.0 + std::abs(x[i]));
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    if (evaluations) *evaluations += 2;
    const bool okp = std::isfinite(fp);
    const bool okm = std::isfinite(fm);
    if (okp && okm) grad[i] = (fp - fm) / (2.0 * h);
    else if (okp) grad[i] = (fp - fx) / h;
    else if (okm) grad[i] = (fx - fm) / h;
    else return false;
  }
  return true;
}

OptimResult minimize_flat(const FlatObjective& objective_fn, Vector x0, const OptimConfig& config,
                          const FlatObjective& guard) {
  config.validate();
  OptimResult res;
  const FlatObjective f = [&](std::span<const double> v) {
    ++res.evaluations;
    double val = objective_fn(v);
    if (!std::isfinite(val)) {
      ++res.rejected;
      val = kInf;
    }
    return val;
  };

  const std::size_t p = x0.size();
  res.x = std::move(x0);
  res.loss = f(res.x);
  res.initial_loss = res.loss;
  res.trace.push_back({0, res.loss, 0.0, "init"});
  if (!std::isfinite(res.loss)) {
    res.status = OptimStatus::NoProgress;
    res.trace.push_back({0, res.loss, 0.0, std::string(status_name(res.status))});
    return res;
  }

  Vector g(p);
  std::deque<Pair> hist;
  OptimStatus status = OptimStatus::MaxIterations;
  std::size_t fd_evals = 0;
  bool blocked = false;  // last line search hit the rejected region
  if (!fd_gradient(f, res.x, res.loss, config.grad_eps, g, &fd_evals)) {
    status = OptimStatus::Diverged;
  } else {
    for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
      if (dot(g, g) == 0.0) {
        status = OptimStatus::Converged;
        break;
      }
      Vector dir = two_loop(hist, g);
      for (double& v : dir) v = -v;
      double slope = dot(g, dir);
      if (!(slope < 0.0)) {
        hist.clear();
        dir = two_loop(hist, g);
        for (double& v : dir) v = -v;
        slope = dot(g, dir);
      }
      if (blocked && guard) {
        // Slide along the boundary: drop the component that climbs the guard.
        Vector n(p);
        if (fd_gradient(guard, res.x, guard(res.x), config.grad_eps, n)) {
          const double nn = dot(n, n);
          const double out = dot(dir, n);
          if (nn > 0.0 && out > 0.0) {
            Vector tangent = dir;
            simd::axpy(-out / nn, n, tangent);
            const double t_slope = dot(g, tangent);
            if (t_slope < 0.0) {
              dir = std::move(tangent);
              slope = t_slope;
            }
          }
        }
      }

      // Backtracking line search; a non-finite trial (divergent or singular) is a rejection.
      bool accepted = false;
      bool saw_rejection = false;
      double step = 1.0;
      Vector trial(p);
      double f_trial = kInf;
      for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
        step = 1.0;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
          for (std::size_t i = 0; i < p; ++i) trial[i] = res.x[i] + step * dir[i];
          f_trial = f(trial);
          if (!std::isfinite(f_trial)) saw_rejection = true;
          if (std::isfinite(f_trial) && f_trial <= res.loss + kArmijo * step * slope) {
            accepted = true;
            break;
          }
          step *= 0.5;
        }
        if (!accepted && !hist.empty()) {
          // Retry once along steepest descent with a fresh model.
          hist.clear();
          dir = two_loop(hist, g);
          for (double& v : dir) v = -v;
          slope = dot(g, dir);
        } else {
          break;
        }
      }
      if (!accepted) {
        status = saw_rejection ? OptimStatus::Diverged : OptimStatus::LineSearchFailed;
        break;
      }
      blocked = saw_rejection;

      const double decrease = res.loss - f_trial;
      Vector g_new(p);
      const bool grad_ok = fd_gradient(f, trial, f_trial, config.grad_eps, g_new, &fd_evals);
      Vector s(p), yv(p);
      for (std::size_t i = 0; i < p; ++i) {
        s[i] = trial[i] - res.x[i];
        yv[i] = g_new[i] - g[i];
      }
      res.x = trial;
      res.loss = f_trial;
      ++res.iterations;
      res.trace.push_back({iter, res.loss, step, "accepted"});

      if (!grad_ok) {
        status = OptimStatus::Diverged;
        break;
      }
      const double sy = dot(s, yv);
      if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(yv, yv)) && sy > 0.0) {
        hist.push_back({std::move(s), std::move(yv), 1.0 / sy});
        if (hist.size() > config.memory) hist.pop_front();
      }
      g = std::move(g_new);
      if (decrease < config.tol * std::max(1.0, std::abs(res.loss))) {
        status = OptimStatus::Converged;
        break;
      }
    }
  }
  res.status = res.loss < res.initial_loss ? status : OptimStatus::NoProgress;
  res.trace.push_back({res.iterations, res.loss, 0.0, std::string(status_name(res.status))});
  return res;
}

Vector pack_theta(const ThetaParams& theta, bool positivity) {
  const std::size_t m = theta.m();
  const std::size_t d = theta.d();
  Vector flat(m * (2 + d));
  for (std::size_t j = 0; j < m; ++j) {
    const double c = theta.c()[j];
    if (positivity && c < 0.0) throw InputError("pack_theta: negative c_j under positivity");
    flat[j] = positivity ? std::sqrt(c) : c;
    flat[m + j] = theta.b()[j];
    for (std::size_t k = 0; k < d; ++k) flat[2 * m + j * d + k] = theta.w()(j, k);
  }
  return flat;
}

ThetaParams unpack_theta(std::span<const double> flat, std::size_t m, std::size_t d,
                         const Activation& activation, bool positivity) {
  if (flat.size() != m * (2 + d)) throw InputError("unpack_theta: packed length must be m (2 + d)");
  Vector c(m), b(m);
  Matrix w(m, d);
  for (std::size_t j = 0; j < m; ++j) {
    c[j] = positivity ? flat[j] * flat[j] : flat[j];
    b[j] = flat[m + j];
    for (std::size_t k = 0; k < d; ++k) w(j, k) = flat[2 * m + j * d + k];
  }
  // c = rho^2 can be exactly 0, so the strict flag is not asserted here.
  return ThetaParams(std::move(c), std::move(b), std::move(w), activation, false);
}

ThetaParams init_theta(std::size_t m, std::size_t d, std::uint64_t seed, const Activation& activation) {
  if (m < 1 || d < 1) throw InputError("init_theta: need m >= 1 and d >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector c(m), b(m);
  Matrix w(m, d);
  for (std::size_t j = 0; j < m; ++j) {
    double cj = unif(rng);
    while (cj == 0.0) cj = unif(rng);
    c[j] = cj;
  }
  for (std::size_t j = 0; j < m; ++j) b[j] = normal(rng);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < d; ++k) w(j, k) = normal(rng);
  return ThetaParams(std::move(c), std::move(b), std::move(w), activation, true);
}

double objective(std::span<const double> flat, const Matrix& x, std::span<const double> y,
                 double lambda, const OptimConfig& config, std::size_t m,
                 const Activation& activation) {
  const ThetaParams theta = unpack_theta(flat, m, x.cols(), activation, config.positivity);
  RegularizedProblem problem{gram(theta, x), Vector(y.begin(), y.end()), lambda};
  if (config.loss_mode.kind == LossMode::Kind::ClosedFormQR) return closed_form_loss(problem);
  const double k_norm = feature_spectral_norm(feature_matrix(theta, x), theta.c());
  return neumann_loss(problem, config.loss_mode.order, k_norm);
}

ThetaSearch minimize(const Matrix& x, std::span<const double> y, double lambda,
                     const OptimConfig& config, std::uint64_t seed, std::size_t m,
                     const Activation& activation) {
  config.validate();
  if (x.rows() == 0 || x.rows() != y.size()) throw InputError("minimize: need one target per sample point");
  if (!(lambda > 0.0)) throw InputError("minimize: lambda must be positive");

  ThetaParams init = init_theta(m, x.cols(), seed, activation);
  bool rescaled = false;
  if (config.loss_mode.kind == LossMode::Kind::Neumann) {
    const double lambda_n = lambda * static_cast<double>(x.rows());
    const double k_norm = feature_spectral_norm(feature_matrix(init, x), init.c());
    if (k_norm >= lambda_n && k_norm > 0.0) {
      // K is linear in c: this puts ||K|| at lambda N / 2.
      const double shrink = lambda_n / (2.0 * k_norm);
      Vector c(init.c().begin(), init.c().end());
      for (double& v : c) v *= shrink;
      init = ThetaParams(std::move(c), Vector(init.b().begin(), init.b().end()), init.w(), activation, true);
      rescaled = true;
    }
  }

  const FlatObjective f = [&](std::span<const double> flat) {
    try {
      return objective(flat, x, y, lambda, config, m, activation);
    } catch (const DivergenceError&) {
      return kInf;
    } catch (const SolverError&) {
      return kInf;
    }
  };
  FlatObjective guard;
  if (config.loss_mode.kind == LossMode::Kind::Neumann) {
    const double lambda_n = lambda * static_cast<double>(x.rows());
    guard = [&x, &activation, &config, m, lambda_n](std::span<const double> flat) {
      const ThetaParams t = unpack_theta(flat, m, x.cols(), activation, config.positivity);
      return feature_spectral_norm(feature_matrix(t, x), t.c()) / lambda_n;
    };
  }
  OptimResult run = minimize_flat(f, pack_theta(init, config.positivity), config, guard);
  ThetaParams theta = unpack_theta(run.x, m, x.cols(), activation, config.positivity);
  const double loss = run.loss;
  return {std::move(theta), loss, std::move(run), seed, rescaled};
}

std::vector<ThetaSearch> minimize_runs(const Matrix& x, std::span<const double> y, double lambda,
                                       const OptimConfig& config, std::span<const std::uint64_t> seeds,
                                       std::size_t m, const Activation& activation) {
  if (seeds.empty()) throw InputError("multi-start needs at least one seed");
  std::vector<ThetaSearch> runs;
  runs.reserve(seeds.size());
  for (std::uint64_t s : seeds) runs.push_back(minimize(x, y, lambda, config, s, m, activation));
  return runs;
}

const ThetaSearch& best_run(const std::vector<ThetaSearch>& runs) {
  if (runs.empty()) throw InputError("best_run: no runs");
  const ThetaSearch* best = &runs.front();
  for (const auto& r : runs) {
    const bool better = std::isfinite(r.loss) && (!std::isfinite(best->loss) || r.loss < best->loss);
    if (better) best = &r;
  }
  return *best;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,loss,step,status\n";
  for (const auto& row : trace)
    out << row.iteration << ',' << io::format_double(row.loss) << ',' << io::format_double(row.step) << ','
        << row.status << '\n';
}

}  // namespace ridgekm
