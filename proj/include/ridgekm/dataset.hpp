#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ridgekm/matrix.hpp"

namespace ridgekm {

/// Numeric design matrix with 1-based integer class labels.
struct Dataset {
  Matrix x;
  std::vector<int> labels;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;

  std::size_t n() const noexcept { return x.rows(); }
  std::size_t d() const noexcept { return x.cols(); }
  std::size_t k() const noexcept { return class_names.size(); }
  void validate() const;
  /// Rows with the given indices, same class table.
  Dataset subset(const std::vector<std::size_t>& rows) const;
};

/// Rows of d numeric fields followed by a label string. A first row whose
/// numeric fields do not parse is taken as a header. Labels map to 1..K in
/// order of first appearance.
Dataset parse_csv(std::istream& in);
Dataset load_csv(const std::filesystem::path& path);

struct StandardizeStats {
  Vector mean;
  Vector std;  ///< population standard deviation (divisor N)

  Matrix apply(const Matrix& x) const;
  Matrix invert(const Matrix& z) const;
};

/// Zero mean and unit population variance per feature. Throws InputError
/// naming the feature when a column is constant.
std::pair<Dataset, StandardizeStats> standardize(const Dataset& ds);

struct PCAResult {
  Matrix components;     ///< k x d, rows are orthonormal directions
  Vector explained_ratio;  ///< eigenvalue / trace, non-increasing
  Vector mean;

  Matrix project(const Matrix& x) const;
};

/// Top-k eigenvectors of the population covariance of X.
PCAResult pca(const Matrix& x, std::size_t k);

/// Deterministic split: a `fraction` of the rows (shuffled by `seed`) is held out.
std::pair<Dataset, Dataset> split_holdout(const Dataset& ds, double fraction, std::uint64_t seed);

}  // namespace ridgekm
