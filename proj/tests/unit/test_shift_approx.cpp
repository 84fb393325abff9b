#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ridgekm/error.hpp"
#include "ridgekm/ovr.hpp"
#include "ridgekm/shift_approx.hpp"

using namespace ridgekm;

TEST_CASE("gaussian profile") {
  const auto k = ShiftInvariantKernel::gaussian(0.5);
  CHECK(k.profile(std::vector<double>{0, 0}) == 1.0);
  const std::vector<double> x{1, 2}, y{0, 1};
  CHECK(k(x, y) == k(y, x));
  CHECK(k(x, y) == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(ShiftInvariantKernel::gaussian(0.0), InputError);
}

TEST_CASE("sample_rr_theta structure") {
  const ThetaParams t = sample_rr_theta(1.0, 1, 2, 42);
  CHECK(t.m() == 1);
  CHECK(t.c()[0] == 2.0);
  CHECK(t.b()[0] >= 0.0);
  CHECK(t.b()[0] < 2 * M_PI);
  CHECK(t.activation().kind() == Activation::Kind::Cosine);
  const ThetaParams again = sample_rr_theta(1.0, 1, 2, 42);
  CHECK(again.w() == t.w());
  CHECK_THROWS_AS(sample_rr_theta(-1.0, 5, 2, 0), InputError);
  CHECK_THROWS_AS(sample_rr_theta(1.0, 0, 2, 0), InputError);
}

TEST_CASE("frequency law has variance 2 gamma per component") {
  const ThetaParams t = sample_rr_theta(1.5, 20000, 2, 9);
  double s2 = 0.0;
  for (std::size_t j = 0; j < t.m(); ++j) s2 += t.w()(j, 0) * t.w()(j, 0);
  CHECK(s2 / 20000.0 == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("diagonal kernel value has unit expectation") {
  const std::vector<double> x{0.3, -0.8};
  double s = 0.0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) s += eval_kernel(sample_rr_theta(1.0, 1, 2, seed), x, x);
  CHECK(std::abs(s / 10000.0 - 1.0) <= 0.05);
}

TEST_CASE("phase_average worked examples") {
  CHECK(phase_average(0, 0, 4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phase_average(0, M_PI, 8) == doctest::Approx(-0.5).epsilon(1e-15));
  for (double a : {-2.0, 0.0, 0.7, 3.1})
    for (std::size_t m2 : {3u, 5u, 9u}) CHECK(std::abs(phase_average(a, a, m2) - 0.5) <= 1e-12);
  CHECK_THROWS_AS(phase_average(0, 0, 2), InputError);
}

TEST_CASE("phase_average matches fine quadrature of the continuous phase mean") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int t = 0; t < 100; ++t) {
    const double a = u(rng), b = u(rng);
    const double q = oracle::periodic_mean([&](double s) { return std::cos(a + s) * std::cos(b + s); });
    for (std::size_t m2 = 3; m2 <= 12; ++m2) REQUIRE(std::abs(phase_average(a, b, m2) - q) <= 1e-12);
  }
}

TEST_CASE("phase-discretized kernel") {
  std::mt19937_64 rng(4);
  const ThetaParams base = sample_rr_theta(1.0, 4, 3, 5);
  const ThetaParams d3 = build_phase_discretized_kernel(base, 3);
  const ThetaParams d300 = build_phase_discretized_kernel(base, 300);
  CHECK(d3.m() == 12);
  CHECK(d3.c()[0] == doctest::Approx(base.c()[0] / 3));
  for (int t = 0; t < 50; ++t) {
    const auto x = oracle::random_vector(3, rng), y = oracle::random_vector(3, rng), v = oracle::random_vector(3, rng);
    double expect = 0.0;
    for (std::size_t j = 0; j < base.m(); ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < 3; ++l) s += base.w()(j, l) * (x[l] - y[l]);
      expect += 0.5 * base.c()[j] * std::cos(s);
    }
    CHECK(std::abs(eval_kernel(d3, x, y) - expect) <= 1e-12);
    CHECK(std::abs(eval_kernel(d3, x, y) - eval_kernel(d300, x, y)) <= 1e-12);
    std::vector<double> xv(3), yv(3);
    for (std::size_t l = 0; l < 3; ++l) {
      xv[l] = x[l] + v[l];
      yv[l] = y[l] + v[l];
    }
    CHECK(std::abs(eval_kernel(d3, x, y) - eval_kernel(d3, xv, yv)) <= 1e-10);
  }
  CHECK_THROWS_AS(build_phase_discretized_kernel(base.with_activation(Activation::relu()), 3), InputError);
  CHECK_THROWS_AS(build_phase_discretized_kernel(base, 2), InputError);
}

TEST_CASE("box lattice") {
  const CompactBox box = CompactBox::cube(2, -1, 1);
  const Matrix g = box.lattice(3);
  CHECK(g.rows() == 9);
  CHECK(g(0, 0) == -1.0);
  CHECK(g(8, 1) == 1.0);
  CHECK_THROWS_AS(box.lattice(1), InputError);
  CHECK_THROWS_AS(CompactBox::cube(2, 1, -1).validate(), InputError);
}

TEST_CASE("sup_error of the zero kernel is one") {
  Matrix w(2, 2);
  const ThetaParams zero({0.0, 0.0}, {0.1, 0.2}, w, Activation::cosine());
  CHECK(sup_error(ShiftInvariantKernel::gaussian(1.0), zero, CompactBox::cube(2, -1, 1), 5) == 1.0);
}

TEST_CASE("sup_error matches a dense-grid oracle") {
  const auto target = ShiftInvariantKernel::gaussian(1.0);
  const ThetaParams t = sample_rr_theta(1.0, 50, 2, 3);
  const CompactBox box = CompactBox::cube(2, -1, 1);
  const Matrix g = box.lattice(7);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.rows(); ++j)
      worst = std::max(worst, std::abs(target(g.row(i), g.row(j)) - eval_kernel(t, g.row(i), g.row(j))));
  CHECK(sup_error(target, t, box, 7) == doctest::Approx(worst).epsilon(1e-12));
}

TEST_CASE("equispaced phases remove the phase noise of random features") {
  const auto target = ShiftInvariantKernel::gaussian(1.0);
  const CompactBox box = CompactBox::cube(2, -1, 1);
  const ThetaParams t = sample_rr_theta(1.0, 1000, 2, 7);
  const double random_phase = sup_error(target, t, box, 17);
  const double equispaced = sup_error(target, build_phase_discretized_kernel(t, 3), box, 17);
  MESSAGE("M1 = 1000, seed 7: random phases " << random_phase << ", equispaced " << equispaced);
  CHECK(equispaced < random_phase);
  CHECK(equispaced < 0.1);
}

TEST_CASE("quadrupling M1 roughly halves the median sup error") {
  const std::vector<std::size_t> m1{200, 800};
  const auto rows = approx_sweep(1.0, m1, 20, 0, CompactBox::cube(2, -1, 1), 9);
  std::vector<double> a, b;
  for (const auto& r : rows) (r.m1 == 200 ? a : b).push_back(r.sup_error);
  const double ratio = median(a) / median(b);
  MESSAGE("median ratio 200 -> 800: " << ratio);
  CHECK(ratio >= 1.5);
  CHECK(ratio <= 2.8);
}
