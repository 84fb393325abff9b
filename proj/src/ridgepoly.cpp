#include "ridgekm/ridgepoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ridgekm/error.hpp"

namespace ridgekm::poly {

namespace {

void require_same_vars(const MPoly& a, const MPoly& b) {
  if (a.n_vars() != b.n_vars()) throw InputError("polynomials have different variable counts");
}

std::size_t kernel_half(const MPoly& p) {
  if (p.n_vars() == 0 || p.n_vars() % 2 != 0)
    throw InputError("kernel polynomial needs an even, nonzero number of variables (x1..xn, y1..yn)");
  return p.n_vars() / 2;
}

// Falling factorial e (e-1) ... (e-k+1).
Rational falling(unsigned e, unsigned k) {
  Rational r = 1;
  for (unsigned i = 0; i < k; ++i) r *= e - i;
  return r;
}

void enumerate_bounded(const MultiIndex& bound, std::size_t i, unsigned remaining, unsigned tail_cap,
                       MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (i == bound.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  const unsigned rest_cap = tail_cap - bound[i];
  const unsigned hi = std::min(bound[i], remaining);
  const unsigned lo = remaining > rest_cap ? remaining - rest_cap : 0;
  for (unsigned v = hi + 1; v-- > lo;) {
    cur[i] = v;
    enumerate_bounded(bound, i + 1, remaining - v, rest_cap, cur, out);
  }
  cur[i] = 0;
}

std::string var_name(std::size_t n_vars, std::size_t i) {
  if (n_vars % 2 == 0 && n_vars > 0) {
    const std::size_t n = n_vars / 2;
    return i < n ? "x" + std::to_string(i + 1) : "y" + std::to_string(i - n + 1);
  }
  return "z" + std::to_string(i + 1);
}

}  // namespace

unsigned total_degree(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0u); }

MPoly MPoly::constant(std::size_t n_vars, const Rational& c) {
  MPoly p(n_vars);
  p.add_term(MultiIndex(n_vars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t n_vars, std::size_t index) {
  if (index >= n_vars) throw InputError("variable index out of range");
  MultiIndex m(n_vars, 0);
  m[index] = 1;
  return monomial(n_vars, std::move(m));
}

MPoly MPoly::monomial(std::size_t n_vars, MultiIndex exponents, const Rational& c) {
  if (exponents.size() != n_vars) throw InputError("monomial exponent length differs from variable count");
  MPoly p(n_vars);
  p.add_term(exponents, c);
  return p;
}

Rational MPoly::coefficient(const MultiIndex& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const MultiIndex& m, const Rational& c) {
  if (m.size() != n_vars_) throw InputError("term exponent length differs from variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned MPoly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

bool MPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = total_degree(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return total_degree(t.first) == d; });
}

MPoly MPoly::homogeneous_part(unsigned k) const {
  MPoly out(n_vars_);
  for (const auto& [m, c] : terms_)
    if (total_degree(m) == k) out.terms_.emplace(m, c);
  return out;
}

std::map<unsigned, MPoly> MPoly::homogeneous_parts() const {
  std::map<unsigned, MPoly> parts;
  for (const auto& [m, c] : terms_) {
    auto [it, inserted] = parts.try_emplace(total_degree(m), n_vars_);
    it->second.terms_.emplace(m, c);
  }
  return parts;
}

MPoly MPoly::widened_kernel(std::size_t n) const {
  const std::size_t old_n = kernel_half(*this);
  if (n < old_n) throw InputError("cannot narrow a kernel polynomial");
  MPoly out(2 * n);
  for (const auto& [m, c] : terms_) {
    MultiIndex e(2 * n, 0);
    for (std::size_t i = 0; i < old_n; ++i) {
      e[i] = m[i];
      e[n + i] = m[old_n + i];
    }
    out.terms_.emplace(std::move(e), c);
  }
  return out;
}

double MPoly::evaluate(std::span<const double> z) const {
  if (z.size() != n_vars_) throw InputError("evaluate: point has wrong dimension");
  double s = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.convert_to<double>();
    for (std::size_t i = 0; i < n_vars_; ++i)
      if (m[i]) t *= std::pow(z[i], static_cast<int>(m[i]));
    s += t;
  }
  return s;
}

double MPoly::magnitude(std::span<const double> z) const {
  if (z.size() != n_vars_) throw InputError("magnitude: point has wrong dimension");
  double s = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = std::abs(c.convert_to<double>());
    for (std::size_t i = 0; i < n_vars_; ++i)
      if (m[i]) t *= std::pow(std::abs(z[i]), static_cast<int>(m[i]));
    s += t;
  }
  return s;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result = constant(n_vars_, 1);
  MPoly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) out << (negative ? "-" : "");
    else out << (negative ? " - " : " + ");
    first = false;
    const bool unit = mag == 1;
    bool any_var = false;
    if (!unit) out << mag.str();
    for (std::size_t i = 0; i < n_vars_; ++i) {
      if (!m[i]) continue;
      if (!unit || any_var) out << '*';
      out << var_name(n_vars_, i);
      if (m[i] > 1) out << '^' << m[i];
      any_var = true;
    }
    if (unit && !any_var) out << '1';
  }
  return out.str();
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  require_same_vars(a, b);
  MPoly out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

MPoly operator-(const MPoly& a) {
  MPoly out(a.n_vars_);
  for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
  return out;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
  require_same_vars(a, b);
  MPoly out(a.n_vars_);
  MultiIndex e(a.n_vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ma[i] + mb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MPoly operator*(const Rational& c, const MPoly& a) {
  MPoly out(a.n_vars_);
  if (c == 0) return out;
  for (const auto& [m, v] : a.terms_) out.terms_.emplace(m, c * v);
  return out;
}

std::vector<MultiIndex> compositions(std::size_t n, unsigned k) {
  if (n == 0) throw InputError("compositions need n >= 1");
  std::vector<MultiIndex> out;
  MultiIndex bound(n, k), cur(n, 0);
  enumerate_bounded(bound, 0, k, static_cast<unsigned>(n) * k, cur, out);
  return out;
}

DeltaSet enumerate_delta(const MultiIndex& s, unsigned l) {
  const unsigned k = total_degree(s);
  if (s.empty()) throw InputError("Delta set needs a nonempty multiindex s");
  if (l > k) throw InputError("Delta set needs 0 <= l <= |s|");
  DeltaSet set{s, l, {}};
  MultiIndex cur(s.size(), 0);
  enumerate_bounded(s, 0, l, k, cur, set.members);
  return set;
}

MultiIndex to_sum_coordinates(const MultiIndex& m) {
  if (m.size() % 2 != 0) throw InputError("index map needs an even-length multiindex");
  const std::size_t n = m.size() / 2;
  MultiIndex out = m;
  for (std::size_t i = 0; i < n; ++i) out[n + i] = m[i] + m[n + i];
  return out;
}

MultiIndex from_sum_coordinates(const MultiIndex& m) {
  if (m.size() % 2 != 0) throw InputError("index map needs an even-length multiindex");
  const std::size_t n = m.size() / 2;
  MultiIndex out = m;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i] > m[n + i]) throw InputError("inverse index map needs xexp <= s");
    out[n + i] = m[n + i] - m[i];
  }
  return out;
}

std::vector<MPoly> vanishing_basis(std::size_t n, unsigned k, BasisLimits limits) {
  if (n < 2) throw InputError("vanishing basis needs n >= 2");
  if (k < 2) throw InputError("vanishing basis needs k >= 2");
  if (n > limits.max_n || k > limits.max_k)
    throw InputError("vanishing basis beyond the configured limits (n <= " + std::to_string(limits.max_n) +
                     ", k <= " + std::to_string(limits.max_k) + ")");
  std::vector<MPoly> basis;
  const auto binomial_term = [n](const MultiIndex& xexp, const MultiIndex& s) {
    MultiIndex e(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = xexp[i];
      e[n + i] = s[i] - xexp[i];
    }
    return e;
  };
  for (const auto& s : compositions(n, k)) {
    for (unsigned l = 1; l < k; ++l) {
      const DeltaSet delta = enumerate_delta(s, l);
      if (delta.members.size() < 2) continue;
      const MultiIndex& kappa = delta.members.front();
      for (std::size_t t = 1; t < delta.members.size(); ++t) {
        MPoly b(2 * n);
        b.add_term(binomial_term(kappa, s), 1);
        b.add_term(binomial_term(delta.members[t], s), -1);
        basis.push_back(std::move(b));
      }
    }
  }
  return basis;
}

std::size_t vanishing_dimension(std::size_t n, unsigned k) {
  std::size_t dim = 0;
  for (const auto& s : compositions(n, k))
    for (unsigned l = 1; l < k; ++l) {
      const std::size_t c = enumerate_delta(s, l).members.size();
      if (c > 1) dim += c - 1;
    }
  return dim;
}

bool vanishes_on_L(const MPoly& p) {
  if (p.is_zero()) return true;
  const std::size_t n = kernel_half(p);
  // Key (s, l): s = xexp + yexp, l = |xexp|. Groups of different total degree never mix.
  std::map<std::pair<MultiIndex, unsigned>, Rational> groups;
  for (const auto& [m, c] : p.terms()) {
    MultiIndex s(n);
    unsigned l = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = m[i] + m[n + i];
      l += m[i];
    }
    groups[{std::move(s), l}] += c;
  }
  return std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.second == 0; });
}

MPoly apply_diff(const MPoly& p, const MPoly& q) {
  require_same_vars(p, q);
  MPoly out(q.n_vars());
  MultiIndex e(q.n_vars());
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      Rational factor = cp * cq;
      bool survives = true;
      for (std::size_t i = 0; i < e.size() && survives; ++i) {
        if (mq[i] < mp[i]) {
          survives = false;
          break;
        }
        factor *= falling(mq[i], mp[i]);
        e[i] = mq[i] - mp[i];
      }
      if (survives) out.add_term(e, factor);
    }
  }
  return out;
}

std::optional<ClosureWitness> closure_witness(const MPoly& q, BasisLimits limits) {
  if (!q.is_homogeneous()) throw InputError("closure test needs a homogeneous polynomial; split it first");
  const std::size_t n = kernel_half(q);
  if (n < 2) throw InputError("closure test needs n >= 2");
  if (q.is_zero()) return std::nullopt;
  const unsigned k = q.degree();
  if (k < 2) return std::nullopt;  // no nonzero vanishing forms of degree 0 or 1
  for (auto& p : vanishing_basis(n, k, limits)) {
    MPoly r = apply_diff(p, q);
    if (!r.is_zero()) return ClosureWitness{std::move(p), std::move(r)};
  }
  return std::nullopt;
}

bool in_closure_homogeneous(const MPoly& q, BasisLimits limits) {
  return !closure_witness(q, limits).has_value();
}

std::vector<double> point_on_L(double alpha, double beta, std::span<const double> w) {
  std::vector<double> z(2 * w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    z[i] = alpha * w[i];
    z[w.size() + i] = beta * w[i];
  }
  return z;
}

std::vector<double> random_point_on_L(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double alpha = normal(rng);
  const double beta = normal(rng);
  std::vector<double> w(n);
  for (auto& v : w) v = normal(rng);
  return point_on_L(alpha, beta, w);
}

std::optional<VanishingWitness> find_nonvanishing_point(const MPoly& p, std::mt19937_64& rng,
                                                        std::size_t attempts) {
  const std::size_t n = kernel_half(p);
  for (std::size_t t = 0; t < attempts; ++t) {
    auto z = random_point_on_L(n, rng);
    const double v = p.evaluate(z);
    const double mag = p.magnitude(z);
    if (std::abs(v) > 1e-6 * mag) return VanishingWitness{std::move(z), v, mag};
  }
  return std::nullopt;
}

MPoly linear_form_power(std::span<const double> a, unsigned k) {
  std::vector<Rational> exact(a.begin(), a.end());
  return linear_form_power(std::span<const Rational>(exact), k);
}

MPoly linear_form_power(std::span<const Rational> a, unsigned k) {
  const std::size_t nv = a.size();
  MPoly form(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    MultiIndex e(nv, 0);
    e[i] = 1;
    form.add_term(e, a[i]);
  }
  return form.pow(k);
}

}  // namespace ridgekm::poly
