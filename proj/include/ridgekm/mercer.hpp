#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ridgekm/features.hpp"
#include "ridgekm/linalg.hpp"

namespace ridgekm {

/// Feature vectors of a signed sum of rank-one kernels on a sample of size n:
/// k = sum_{plus} v v^T - sum_{minus} v v^T.
struct SignedFeatureModel {
  std::vector<Vector> plus;
  std::vector<Vector> minus;

  /// Common vector length; throws InputError on mismatch or when empty.
  std::size_t n() const;
};

struct FrameVerdict {
  bool mercer = false;
  double min_eigenvalue = 0.0;
};

/// True iff min eigenvalue of gram(theta, X) >= -tol.
bool is_psd_on_sample(const ThetaParams& theta, const Matrix& x, double tol = 1e-8);

/// G = sum_{plus} v v^T - sum_{minus} v v^T
Matrix frame_matrix(const SignedFeatureModel& model);

/// Minimum of the quadratic form over the unit sphere, i.e. lambda_min(G),
/// with the verdict lambda_min >= -1e-10.
FrameVerdict check_frame(const SignedFeatureModel& model);

bool frame_condition(const SignedFeatureModel& model);

/// CSV rows "<+|->,v_1,...,v_n"; an optional first header row starting with "sign".
SignedFeatureModel read_signed_model(std::istream& in);

}  // namespace ridgekm
