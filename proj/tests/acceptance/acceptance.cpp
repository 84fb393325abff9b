// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ridgekm/dataset.hpp"
#include "ridgekm/error.hpp"
#include "ridgekm/krr.hpp"
#include "ridgekm/linalg.hpp"
#include "ridgekm/mercer.hpp"
#include "ridgekm/ovr.hpp"
#include "ridgekm/ridgepoly.hpp"
#include "ridgekm/shift_approx.hpp"

using namespace ridgekm;

namespace {

int g_failed = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  [" << detail << "]" << std::endl;
  if (!ok) ++g_failed;
}

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

Vector randn(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vector v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

Matrix randn(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(r, c);
  const Vector v = randn(r * c, rng);
  std::copy(v.begin(), v.end(), m.data().begin());
  return m;
}

ThetaParams random_theta(std::size_t m, std::size_t d, std::mt19937_64& rng, bool nonneg = true) {
  Vector c = randn(m, rng);
  if (nonneg)
    for (auto& v : c) v = std::abs(v);
  return ThetaParams(c, randn(m, rng), randn(m, d, rng), Activation::cosine());
}

struct Table1 {
  Table1Row cos_qr, relu_qr, cos_neu, relu_neu;
  double cos_qr_seconds = 0.0;
};

OvrConfig table1_config(Activation act, LossMode mode) {
  OvrConfig cfg;
  cfg.m = 2;
  cfg.lambda = 0.01;
  cfg.activation = std::move(act);
  cfg.optim.loss_mode = mode;
  return cfg;
}

std::string spread(const Table1Row& r) {
  return "acc " + fmt(r.accuracy) + ", best " + fmt(r.best) + ", median " + fmt(r.median) + ", std " +
         fmt(r.stddev) + ", failed " + std::to_string(r.failed_runs) + "/" + std::to_string(r.total_runs);
}

void table1_suite(const Dataset& ds) {
  Table1 t;
  const auto t0 = std::chrono::steady_clock::now();
  t.cos_qr = run_table1_config(ds, table1_config(Activation::cosine(), LossMode::closed_form()));
  t.cos_qr_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  t.relu_qr = run_table1_config(ds, table1_config(Activation::relu(), LossMode::closed_form()));
  t.cos_neu = run_table1_config(ds, table1_config(Activation::cosine(), LossMode::neumann(5)));

  bool relu_neu_completed = true;
  std::string relu_neu_error;
  try {
    t.relu_neu = run_table1_config(ds, table1_config(Activation::relu(), LossMode::neumann(5)));
  } catch (const std::exception& e) {
    relu_neu_completed = false;
    relu_neu_error = e.what();
  }

  std::cout << "\n" << table1_markdown({t.cos_qr, t.relu_qr, t.cos_neu, t.relu_neu}) << "\n";

  report("Table 1 cos/QR: best >= 0.95, median >= 0.90, <= 120 s",
         t.cos_qr.best >= 0.95 && t.cos_qr.median >= 0.90 && t.cos_qr_seconds <= 120.0,
         spread(t.cos_qr) + ", " + fmt(t.cos_qr_seconds, 1) + " s");
  report("Table 1 ReLU/QR: best >= 0.85", t.relu_qr.best >= 0.85, spread(t.relu_qr));
  report("Table 1 cos/Neumann L=5: best >= 0.75, seed spread above QR",
         t.cos_neu.best >= 0.75 && t.cos_neu.stddev > t.cos_qr.stddev,
         spread(t.cos_neu) + "; QR std " + fmt(t.cos_qr.stddev));
  report("Table 1 ReLU/Neumann L=5: completes with a diverged/no-progress run",
         relu_neu_completed && t.relu_neu.failed_runs >= 1,
         relu_neu_completed ? spread(t.relu_neu) : "threw: " + relu_neu_error);
}

void pca_suite(const Dataset& ds) {
  const PCAResult p = pca(ds.x, 2);
  const double ev = p.explained_ratio[0] + p.explained_ratio[1];
  report("PCA: PC1+PC2 explained variance = 0.9581 +- 0.002", std::abs(ev - 0.9581) <= 0.002, fmt(ev, 6));
}

void lemma_suite() {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<std::size_t> dn(1, 12);
  const double lambdas[] = {1e-3, 1e-2, 1e-1, 1.0};
  int pass = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = dn(rng);
    const ThetaParams theta = random_theta(3, 2, rng);
    const Matrix x = randn(n, 2, rng);
    const Vector y = randn(n, rng);
    const double lambda = lambdas[t % 4];
    const double cf = closed_form_loss({gram(theta, x), y, lambda});
    const double dl = direct_loss(fit(theta, x, y, lambda), x, y);
    const double rel = std::abs(cf - dl) / (1 + std::abs(cf));
    worst = std::max(worst, rel);
    pass += rel <= 1e-8 ? 1 : 0;
  }
  report("Closed-form loss equals direct loss on 100 instances", pass == 100,
         std::to_string(pass) + "/100, worst " + sci(worst));
}

void neumann_suite() {
  std::mt19937_64 rng(62);
  int bound_ok = 0, bound_total = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 3 + t % 10;
    const ThetaParams theta = random_theta(1 + t % 4, 3, rng);
    const GramMatrix k = gram(theta, randn(n, 3, rng));
    const double norm = spectral_norm(k);
    const double lambda = norm * (2.0 + 0.5 * (t % 5)) / static_cast<double>(n);
    const RegularizedProblem p{k, randn(n, rng), lambda};
    const double exact = closed_form_loss(p);
    const double q = norm / (lambda * static_cast<double>(n));
    double yy = 0.0;
    for (double v : p.y) yy += v * v;
    for (std::size_t l = 0; l <= 20; ++l) {
      const double err = std::abs(neumann_loss(p, l) - exact);
      const double bound = std::pow(q, static_cast<double>(l + 1)) * yy / static_cast<double>(n) / (1 - q);
      ++bound_total;
      bound_ok += err <= bound * (1 + 1e-9) + 1e-14 ? 1 : 0;
    }
  }

  // Guard: raises exactly when lambda N <= ||K||.
  int guard_ok = 0, guard_total = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 4;
    const GramMatrix k = gram(random_theta(2, 2, rng), randn(n, 2, rng));
    const double norm = spectral_norm(k);
    for (double f : {0.5, 1.0, 1.0 + 1e-6, 2.0}) {
      const RegularizedProblem p{k, randn(n, rng), f * norm / static_cast<double>(n)};
      bool threw = false;
      try {
        neumann_loss(p, 5, norm);
      } catch (const DivergenceError&) {
        threw = true;
      }
      ++guard_total;
      guard_ok += threw == (f <= 1.0) ? 1 : 0;
    }
  }
  report("Neumann truncation within geometric remainder; guard iff lambda N <= ||K||",
         bound_ok == bound_total && guard_ok == guard_total,
         "bound " + std::to_string(bound_ok) + "/" + std::to_string(bound_total) + ", guard " +
             std::to_string(guard_ok) + "/" + std::to_string(guard_total));
}

void phase_suite() {
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> u(-10, 10);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double a = u(rng), b = u(rng);
    for (std::size_t m2 = 3; m2 <= 12; ++m2)
      worst = std::max(worst, std::abs(phase_average(a, b, m2) - 0.5 * std::cos(a - b)));
  }
  double worst_kernel = 0.0;
  for (int t = 0; t < 20; ++t) {
    const ThetaParams base = sample_rr_theta(1.0, 5, 3, 100 + t);
    for (std::size_t m2 : {3u, 4u, 7u, 50u}) {
      const ThetaParams disc = build_phase_discretized_kernel(base, m2);
      for (int s = 0; s < 10; ++s) {
        const Vector x = randn(3, rng), y = randn(3, rng);
        double expect = 0.0;
        for (std::size_t j = 0; j < base.m(); ++j) {
          double arg = 0.0;
          for (std::size_t l = 0; l < 3; ++l) arg += base.w()(j, l) * (x[l] - y[l]);
          expect += 0.5 * base.c()[j] * std::cos(arg);
        }
        worst_kernel = std::max(worst_kernel, std::abs(eval_kernel(disc, x, y) - expect));
      }
    }
  }
  report("Phase average exact to 1e-12; discretized kernel equals (c/2) cos(<w, x-y>)",
         worst <= 1e-12 && worst_kernel <= 1e-12, "average " + sci(worst) + ", kernel " + sci(worst_kernel));
}

void gaussian_suite() {
  const CompactBox box = CompactBox::cube(2, -1, 1);
  auto med = [&](std::size_t m1) {
    const std::vector<std::size_t> l{m1};
    std::vector<double> e;
    for (const auto& r : approx_sweep(1.0, l, 20, 0, box, 17, 3)) e.push_back(r.sup_error);
    return median(e);
  };
  const double m1000 = med(1000);
  const double a = med(100), b = med(400), c = med(1600);
  std::vector<double> random_phase;
  for (const auto& r : approx_sweep(1.0, std::vector<std::size_t>{1000}, 20, 0, box, 17, 0))
    random_phase.push_back(r.sup_error);
  std::cout << "  random-phase features at M1 = 1000: median sup error " << fmt(median(random_phase)) << '\n';
  report("Gaussian approximation: M1 = 1000 median sup error < 0.05; medians non-increasing in M1",
         m1000 < 0.05 && a >= b && b >= c,
         "M1=1000 " + fmt(m1000) + "; 100/400/1600: " + fmt(a) + " " + fmt(b) + " " + fmt(c));
}

void mercer_suite() {
  std::mt19937_64 rng(64);
  int psd_ok = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 20;
    const ThetaParams theta = random_theta(1 + t % 6, 3, rng, true);
    const double me = min_eigenvalue_sym(gram(theta, randn(n, 3, rng)).matrix());
    psd_ok += me >= -1e-8 * static_cast<double>(n) ? 1 : 0;
  }

  int agree = 0, borderline = 0;
  std::normal_distribution<double> g(0, 1);
  std::uniform_int_distribution<std::size_t> dn(1, 6), dc(0, 4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = dn(rng);
    SignedFeatureModel model;
    const std::size_t np = 1 + dc(rng), nm = dc(rng);
    for (std::size_t j = 0; j < np; ++j) model.plus.push_back(randn(n, rng));
    for (std::size_t j = 0; j < nm; ++j) model.minus.push_back(randn(n, rng, 0.6));
    const FrameVerdict v = check_frame(model);
    double sampled = INFINITY;
    Vector a(n);
    for (int s = 0; s < 100000; ++s) {
      double nrm = 0.0;
      for (auto& x : a) {
        x = g(rng);
        nrm += x * x;
      }
      nrm = std::sqrt(nrm);
      double q = 0.0;
      for (const auto& vv : model.plus) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += vv[i] * a[i];
        q += d * d / (nrm * nrm);
      }
      for (const auto& vv : model.minus) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += vv[i] * a[i];
        q -= d * d / (nrm * nrm);
      }
      sampled = std::min(sampled, q);
    }
    const bool sampled_mercer = sampled >= -1e-8;
    if (std::abs(v.min_eigenvalue) <= 1e-8) {
      ++borderline;
      ++agree;
    } else if (sampled_mercer == v.mercer || (!v.mercer && sampled >= v.min_eigenvalue - 1e-8 && sampled < 0.0)) {
      ++agree;
    } else if (!v.mercer && sampled_mercer) {
      // Sampling missed a thin negative cap; the eigen-minimum is the exact decision.
      std::cout << "  sampling missed negative direction: min eig " << sci(v.min_eigenvalue) << ", sampled "
                << sci(sampled) << '\n';
    }
  }

  const bool ex1 = frame_condition({{{2, 0}}, {{1, 0}}});
  const FrameVerdict ex2 = check_frame({{{1, 1}}, {{1, 0}}});
  const bool examples =
      ex1 && !ex2.mercer && std::abs(ex2.min_eigenvalue - (1 - std::sqrt(5.0)) / 2) <= 1e-10;
  report("Mercer: nonnegative-weight Grams PSD; frame test agrees with sphere sampling; worked examples",
         psd_ok == 200 && agree == 200 && examples,
         "PSD " + std::to_string(psd_ok) + "/200, agree " + std::to_string(agree) + "/200 (" +
             std::to_string(borderline) + " within 1e-8 of zero), examples " + (examples ? "ok" : "wrong"));
}

void poly_suite() {
  using namespace ridgekm::poly;
  const bool not1 = !in_closure_homogeneous(parse_poly("(x1^2+x2^2)*(y1^2+y2^2)"));
  const bool not2 = !in_closure_homogeneous(parse_poly("(x1^2-x2^2)*(y1^2-y2^2)"));

  std::mt19937_64 rng(65);
  std::normal_distribution<double> g(0, 1);
  std::uniform_int_distribution<unsigned> dk(1, 6);
  int members = 0;
  for (int t = 0; t < 100; ++t) {
    const Rational a(g(rng)), b(g(rng)), w1(g(rng)), w2(g(rng));
    const std::vector<Rational> z{a * w1, a * w2, b * w1, b * w2};
    const unsigned k = dk(rng);
    const MPoly q = linear_form_power(std::span<const Rational>(z), k);
    members += (k < 2 || in_closure_homogeneous(q)) ? 1 : 0;
  }

  double worst = 0.0;
  std::size_t checked = 0;
  for (std::size_t n = 2; n <= 3; ++n)
    for (unsigned k = 2; k <= 5; ++k)
      for (const MPoly& p : vanishing_basis(n, k)) {
        ++checked;
        for (int s = 0; s < 200; ++s) {
          const auto z = random_point_on_L(n, rng);
          worst = std::max(worst, std::abs(p.evaluate(z)) / (1.0 + p.magnitude(z)));
        }
      }
  report("Polynomial obstruction: not1/not2 rejected, 100 powers on L accepted, basis vanishes on L",
         not1 && not2 && members == 100 && worst <= 1e-10,
         std::string("not1 ") + (not1 ? "rejected" : "accepted") + ", not2 " + (not2 ? "rejected" : "accepted") +
             ", members " + std::to_string(members) + "/100, " + std::to_string(checked) +
             " basis elements, worst " + sci(worst));
}

}  // namespace

int main() {
  try {
    const Dataset iris = standardize(load_csv(std::string(RIDGEKM_DATA_DIR) + "/iris.csv")).first;
    pca_suite(iris);
    lemma_suite();
    neumann_suite();
    phase_suite();
    gaussian_suite();
    mercer_suite();
    poly_suite();
    table1_suite(iris);
  } catch (const std::exception& e) {
    std::cout << "FAIL  suite aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << "\n" << (g_failed == 0 ? "all criteria passed" : std::to_string(g_failed) + " criteria failed") << '\n';
  return g_failed == 0 ? 0 : 1;
}
