#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "ridgekm/dataset.hpp"
#include "ridgekm/error.hpp"
#include "ridgekm/ovr.hpp"
#include "ridgekm/text_io.hpp"

using namespace ridgekm;

namespace {

const std::string kIris = std::string(RIDGEKM_DATA_DIR) + "/iris.csv";

Dataset from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

/// Scorer that returns a fixed constant everywhere: a zero-frequency cosine term.
FittedModel constant_scorer(double value, std::size_t d) {
  return FittedModel(ThetaParams({1.0}, {0.0}, Matrix(1, d), Activation::cosine()), Matrix(1, d), Vector{value}, 0.01);
}

}  // namespace

TEST_CASE("bundled iris file") {
  const Dataset ds = load_csv(kIris);
  CHECK(ds.n() == 150);
  CHECK(ds.d() == 4);
  CHECK(ds.k() == 3);
  std::vector<int> count(4, 0);
  for (int l : ds.labels) ++count[l];
  CHECK(count[1] == 50);
  CHECK(count[2] == 50);
  CHECK(count[3] == 50);
  CHECK(ds.class_names[0] == "setosa");
  CHECK(ds.feature_names.size() == 4);
}

TEST_CASE("csv errors") {
  CHECK_THROWS_AS(from_text(""), ParseError);
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), ParseError);
  try {
    from_text("1,2,3,4,a\n1,2,3,b\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(from_text("a,b,c\n1,2,x\n1,zz,y\n"), ParseError);
  const Dataset ds = from_text("b,a\n1,dog\n2,cat\n3,dog\n");
  CHECK(ds.labels == std::vector<int>{1, 2, 1});
  CHECK(ds.class_names == std::vector<std::string>{"dog", "cat"});
}

TEST_CASE("standardize") {
  const Dataset two = from_text("0,a\n2,b\n");
  const auto [z, st] = standardize(two);
  CHECK(z.x(0, 0) == -1.0);
  CHECK(z.x(1, 0) == 1.0);
  CHECK(st.mean[0] == 1.0);
  CHECK(st.std[0] == 1.0);
  CHECK_THROWS_AS(standardize(from_text("1,a\n1,b\n")), InputError);

  const Dataset iris = load_csv(kIris);
  const auto [zi, si] = standardize(iris);
  for (std::size_t j = 0; j < 4; ++j) {
    double m = 0.0, v = 0.0;
    for (std::size_t i = 0; i < 150; ++i) m += zi.x(i, j);
    m /= 150;
    for (std::size_t i = 0; i < 150; ++i) v += (zi.x(i, j) - m) * (zi.x(i, j) - m);
    CHECK(std::abs(m) <= 1e-12);
    CHECK(std::abs(v / 150 - 1.0) <= 1e-12);
  }

  Dataset shifted = iris;
  for (std::size_t i = 0; i < 150; ++i)
    for (std::size_t j = 0; j < 4; ++j) shifted.x(i, j) += 10.0 * (j + 1);
  const Dataset zs = standardize(shifted).first;
  const Dataset twice = standardize(zi).first;
  const Matrix back = si.invert(zi.x);
  for (std::size_t i = 0; i < 150; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(std::abs(zs.x(i, j) - zi.x(i, j)) <= 1e-12);
      CHECK(std::abs(twice.x(i, j) - zi.x(i, j)) <= 1e-12);
      CHECK(std::abs(back(i, j) - iris.x(i, j)) <= 1e-12);
    }
}

TEST_CASE("pca") {
  const Dataset iris = standardize(load_csv(kIris)).first;
  const PCAResult p2 = pca(iris.x, 2);
  CHECK(p2.explained_ratio[0] + p2.explained_ratio[1] == doctest::Approx(0.9581).epsilon(0.002));
  CHECK(p2.explained_ratio[0] >= p2.explained_ratio[1]);

  const PCAResult p4 = pca(iris.x, 4);
  double sum = 0.0;
  for (double r : p4.explained_ratio) sum += r;
  CHECK(std::abs(sum - 1.0) <= 1e-10);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      double d = 0.0;
      for (std::size_t j = 0; j < 4; ++j) d += p4.components(a, j) * p4.components(b, j);
      CHECK(std::abs(d - (a == b ? 1.0 : 0.0)) <= 1e-10);
    }

  Matrix line(20, 3);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 3; ++j) line(i, j) = (i * 0.5 - 3.0) * (j + 1.0);
  CHECK(pca(line, 1).explained_ratio[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(pca(line, 4), InputError);
}

TEST_CASE("pca projection is a contraction") {
  const Dataset iris = standardize(load_csv(kIris)).first;
  const PCAResult p = pca(iris.x, 2);
  const Matrix proj = p.project(iris.x);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> di(0, 149);
  for (int t = 0; t < 500; ++t) {
    const std::size_t a = di(rng), b = di(rng);
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t j = 0; j < 4; ++j) d0 += std::pow(iris.x(a, j) - iris.x(b, j), 2);
    for (std::size_t j = 0; j < 2; ++j) d1 += std::pow(proj(a, j) - proj(b, j), 2);
    CHECK(d1 <= d0 * (1 + 1e-12) + 1e-12);
  }
}

TEST_CASE("argmax with first-index ties") {
  CHECK(argmax_first(std::vector<double>{0.9, 0.1, 0.2}) == 0);
  CHECK(argmax_first(std::vector<double>{0.5, 0.5, 0.1}) == 0);
  CHECK(argmax_first(std::vector<double>{0.1, 0.3, 0.3}) == 1);
}

TEST_CASE("classify is invariant under monotone score maps") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const Vector s = oracle::random_vector(4, rng);
    std::vector<double> m1(4), m2(4);
    for (std::size_t i = 0; i < 4; ++i) {
      m1[i] = std::exp(s[i]);
      m2[i] = std::pow(s[i], 3) + 5.0 * s[i];
    }
    CHECK(argmax_first(m1) == argmax_first(s));
    CHECK(argmax_first(m2) == argmax_first(s));
  }
}

TEST_CASE("accuracy of a constant classifier") {
  const Dataset iris = load_csv(kIris);
  OvrModel model;
  model.class_names = iris.class_names;
  model.models = {constant_scorer(1.0, 4), constant_scorer(0.0, 4), constant_scorer(0.0, 4)};
  CHECK(accuracy(model, iris) == doctest::Approx(1.0 / 3.0));
  CHECK(classify(model, iris.x.row(120)) == 1);
}

TEST_CASE("separable toy set is memorized") {
  const Dataset toy = from_text("0,0,a\n3,0,b\n0,3,c\n");
  OvrConfig cfg;
  cfg.m = 3;
  cfg.lambda = 1e-4;
  cfg.seeds = {0, 1};
  cfg.optim.max_iters = 30;
  const OvrModel model = train_ovr(toy, cfg);
  CHECK(model.models.size() == 3);
  CHECK(accuracy(model, toy) == 1.0);
}

TEST_CASE("single-class dataset") {
  const Dataset one = from_text("0,a\n1,a\n2,a\n");
  OvrConfig cfg;
  cfg.seeds = {0};
  cfg.optim.max_iters = 3;
  const OvrTraining tr = train_ovr_detailed(one, cfg);
  CHECK(tr.best.models.size() == 1);
  CHECK(accuracy(tr.best, one) == 1.0);
}

TEST_CASE("ovr model round-trips and keeps predictions") {
  const Dataset raw = load_csv(kIris);
  const auto [ds, st] = standardize(raw);
  OvrConfig cfg;
  cfg.seeds = {0};
  cfg.optim.max_iters = 5;
  OvrModel model = train_ovr(ds, cfg);
  CHECK(model.models.size() == 3);
  for (const auto& m : model.models) CHECK(m.theta().m() * (2 + m.theta().d()) == 12);
  model.stats = st;
  std::stringstream s;
  write_ovr(s, model);
  const OvrModel back = read_ovr(s);
  CHECK(back.class_names == model.class_names);
  CHECK(classify_all(back, raw.x) == classify_all(model, raw.x));
  const Vector a = scores(model, raw.x.row(7)), b = scores(back, raw.x.row(7));
  CHECK(a == b);
}

TEST_CASE("table formatting and statistics") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK(stddev(std::vector<double>{1.0, 1.0}) == 0.0);
  CHECK(stddev(std::vector<double>{0.0, 2.0}) == 1.0);
  Table1Row r;
  r.method = "Inverted QR matrix";
  r.function = "cos";
  r.accuracy = 0.98;
  const std::string md = table1_markdown({r});
  CHECK(md.find("| Method | Function | Accuracy |") == 0);
  CHECK(md.find("| Inverted QR matrix | cos | 0.9800 |") != std::string::npos);
}

TEST_CASE("text helpers") {
  CHECK(io::parse_double(" 1.5e-3 ") == 1.5e-3);
  CHECK_THROWS_AS(io::parse_double("1.5x", 7), ParseError);
  CHECK(io::parse_int("-12") == -12);
  CHECK_THROWS_AS(io::parse_int("1.0"), ParseError);
  const double v = 0.1 + 0.2;
  CHECK(io::parse_double(io::format_double(v)) == v);
  CHECK(io::split_char("a,,b", ',').size() == 3);
  CHECK(io::split_ws("  a  b ").size() == 2);
}
