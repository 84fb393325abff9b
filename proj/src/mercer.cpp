#include "ridgekm/mercer.hpp"

#include <istream>
#include <string>

#include "ridgekm/error.hpp"
#include "ridgekm/text_io.hpp"

namespace ridgekm {

namespace {
constexpr double kFrameTol = 1e-10;
}

std::size_t SignedFeatureModel::n() const {
  const Vector* first = !plus.empty() ? &plus.front() : (!minus.empty() ? &minus.front() : nullptr);
  if (first == nullptr || first->empty()) throw InputError("signed feature model has no vectors");
  const std::size_t len = first->size();
  for (const auto* group : {&plus, &minus})
    for (const auto& v : *group)
      if (v.size() != len) throw InputError("signed feature model: vectors differ in length");
  return len;
}

bool is_psd_on_sample(const ThetaParams& theta, const Matrix& x, double tol) {
  return min_eigenvalue_sym(gram(theta, x).matrix()) >= -tol;
}

Matrix frame_matrix(const SignedFeatureModel& model) {
  const std::size_t n = model.n();
  Matrix g(n, n);
  const auto accumulate = [&](const Vector& v, double sign) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) g(i, j) += sign * v[i] * v[j];
  };
  for (const auto& v : model.plus) accumulate(v, 1.0);
  for (const auto& v : model.minus) accumulate(v, -1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g(j, i) = g(i, j);
  return g;
}

FrameVerdict check_frame(const SignedFeatureModel& model) {
  const double lmin = min_eigenvalue_sym(frame_matrix(model));
  return {lmin >= -kFrameTol, lmin};
}

bool frame_condition(const SignedFeatureModel& model) { return check_frame(model).mercer; }

SignedFeatureModel read_signed_model(std::istream& in) {
  SignedFeatureModel model;
  io::LineReader reader(in);
  bool first = true;
  std::size_t width = 0;
  while (!reader.eof()) {
    const std::string line = reader.next("vector row");
    const auto fields = io::split_char(line, ',');
    if (first && !fields.empty() && fields[0].starts_with("sign")) {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 2) throw ParseError("row needs a sign and at least one component", reader.line());
    if (width == 0) width = fields.size();
    if (fields.size() != width)
      throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(width),
                       reader.line());
    Vector v;
    for (std::size_t i = 1; i < fields.size(); ++i) v.push_back(io::parse_double(fields[i], reader.line()));
    if (fields[0] == "+") model.plus.push_back(std::move(v));
    else if (fields[0] == "-") model.minus.push_back(std::move(v));
    else throw ParseError("sign column must be '+' or '-'", reader.line());
  }
  if (model.plus.empty() && model.minus.empty()) throw ParseError("no vectors in input");
  return model;
}

}  // namespace ridgekm
