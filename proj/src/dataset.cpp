#include "ridgekm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <string>

#include "ridgekm/error.hpp"
#include "ridgekm/linalg.hpp"
#include "ridgekm/text_io.hpp"

namespace ridgekm {

void Dataset::validate() const {
  if (x.rows() == 0) throw InputError("dataset is empty");
  if (labels.size() != x.rows()) throw InputError("dataset: one label per row");
  for (int l : labels)
    if (l < 1 || static_cast<std::size_t>(l) > class_names.size())
      throw InputError("dataset: label out of range");
  for (double v : x.data())
    if (!std::isfinite(v)) throw InputError("dataset: non-finite value");
}

Dataset Dataset::subset(const std::vector<std::size_t>& rows) const {
  Dataset out;
  out.x = Matrix(rows.size(), d());
  out.feature_names = feature_names;
  out.class_names = class_names;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto src = x.row(rows.at(r));
    std::copy(src.begin(), src.end(), out.x.row(r).begin());
    out.labels.push_back(labels[rows[r]]);
  }
  return out;
}

Dataset parse_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> raw_labels;
  std::vector<std::string> header;
  std::size_t width = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (io::trim(line).empty()) continue;
    const auto fields = io::split_char(line, ',');
    if (fields.size() < 2) throw ParseError("need at least one feature and a label", line_no);
    if (width == 0) {
      width = fields.size();
      // Header if any feature field is not numeric.
      bool numeric = true;
      for (std::size_t i = 0; i + 1 < fields.size() && numeric; ++i) {
        try {
          io::parse_double(fields[i]);
        } catch (const ParseError&) {
          numeric = false;
        }
      }
      if (!numeric) {
        for (auto f : fields) header.emplace_back(f);
        continue;
      }
    }
    if (fields.size() != width)
      throw ParseError("expected " + std::to_string(width) + " fields, found " + std::to_string(fields.size()),
                       line_no);
    std::vector<double> vals(width - 1);
    for (std::size_t i = 0; i + 1 < width; ++i) vals[i] = io::parse_double(fields[i], line_no);
    if (fields.back().empty()) throw ParseError("empty label", line_no);
    rows.push_back(std::move(vals));
    raw_labels.emplace_back(fields.back());
  }
  if (rows.empty()) throw ParseError("no data rows");

  Dataset ds;
  const std::size_t d = width - 1;
  ds.x = Matrix(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i) std::copy(rows[i].begin(), rows[i].end(), ds.x.row(i).begin());
  if (!header.empty()) ds.feature_names.assign(header.begin(), header.begin() + static_cast<long>(d));
  else
    for (std::size_t i = 0; i < d; ++i) ds.feature_names.push_back("f" + std::to_string(i + 1));
  for (const auto& l : raw_labels) {
    auto it = std::find(ds.class_names.begin(), ds.class_names.end(), l);
    if (it == ds.class_names.end()) {
      ds.class_names.push_back(l);
      ds.labels.push_back(static_cast<int>(ds.class_names.size()));
    } else {
      ds.labels.push_back(static_cast<int>(it - ds.class_names.begin()) + 1);
    }
  }
  return ds;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return parse_csv(in);
}

Matrix StandardizeStats::apply(const Matrix& x) const {
  if (x.cols() != mean.size()) throw InputError("standardize: feature count mismatch");
  Matrix z = x;
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) z(i, j) = (x(i, j) - mean[j]) / std[j];
  return z;
}

Matrix StandardizeStats::invert(const Matrix& z) const {
  if (z.cols() != mean.size()) throw InputError("standardize: feature count mismatch");
  Matrix x = z;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = z(i, j) * std[j] + mean[j];
  return x;
}

std::pair<Dataset, StandardizeStats> standardize(const Dataset& ds) {
  ds.validate();
  const std::size_t n = ds.n();
  const std::size_t d = ds.d();
  StandardizeStats st{Vector(d, 0.0), Vector(d, 0.0)};
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += ds.x(i, j);
    st.mean[j] = s / static_cast<double>(n);
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += (ds.x(i, j) - st.mean[j]) * (ds.x(i, j) - st.mean[j]);
    st.std[j] = std::sqrt(v / static_cast<double>(n));
    if (!(st.std[j] > 0.0)) {
      const std::string name = j < ds.feature_names.size() ? ds.feature_names[j] : std::to_string(j + 1);
      throw InputError("feature '" + name + "' has zero variance");
    }
  }
  Dataset out = ds;
  out.x = st.apply(ds.x);
  return {std::move(out), std::move(st)};
}

Matrix PCAResult::project(const Matrix& x) const {
  if (x.cols() != mean.size()) throw InputError("pca projection: feature count mismatch");
  Matrix out(x.rows(), components.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t c = 0; c < components.rows(); ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < x.cols(); ++j) s += (x(i, j) - mean[j]) * components(c, j);
      out(i, c) = s;
    }
  return out;
}

PCAResult pca(const Matrix& x, std::size_t k) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n == 0 || d == 0) throw InputError("pca: empty data");
  if (k < 1 || k > d) throw InputError("pca: need 1 <= k <= d");
  Vector mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean[j] += x(i, j);
  for (double& m : mean) m /= static_cast<double>(n);
  Matrix cov(d, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b) cov(a, b) += (x(i, a) - mean[a]) * (x(i, b) - mean[b]);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) {
      cov(a, b) /= static_cast<double>(n);
      cov(b, a) = cov(a, b);
    }
  const SymmetricEigen eig = symmetric_eigen(cov, true);
  double trace = 0.0;
  for (std::size_t a = 0; a < d; ++a) trace += cov(a, a);

  PCAResult out;
  out.mean = mean;
  out.components = Matrix(k, d);
  out.explained_ratio.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t e = d - 1 - c;  // eigenvalues ascend
    out.explained_ratio[c] = trace > 0.0 ? std::max(eig.values[e], 0.0) / trace : 0.0;
    // Sign convention: largest-magnitude entry positive.
    std::size_t arg = 0;
    for (std::size_t j = 1; j < d; ++j)
      if (std::abs(eig.vectors(j, e)) > std::abs(eig.vectors(arg, e))) arg = j;
    const double sign = eig.vectors(arg, e) < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < d; ++j) out.components(c, j) = sign * eig.vectors(j, e);
  }
  return out;
}

std::pair<Dataset, Dataset> split_holdout(const Dataset& ds, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw InputError("holdout fraction must be in (0, 1)");
  std::vector<std::size_t> idx(ds.n());
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(idx[i - 1], idx[pick(rng)]);
  }
  const auto n_test = static_cast<std::size_t>(std::round(fraction * static_cast<double>(ds.n())));
  if (n_test == 0 || n_test >= ds.n()) throw InputError("holdout leaves an empty split");
  std::vector<std::size_t> test(idx.begin(), idx.begin() + static_cast<long>(n_test));
  std::vector<std::size_t> train(idx.begin() + static_cast<long>(n_test), idx.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {ds.subset(train), ds.subset(test)};
}

}  // namespace ridgekm
