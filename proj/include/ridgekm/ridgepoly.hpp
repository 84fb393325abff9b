#pragma once

// Exact sparse polynomials over z = (x, y) in R^{2n} and the tests that decide
// which kernels lie in the closure of span{ g1(<w, x>) g2(<w, y>) }.
//
// L denotes the cone {(a w, b w) : a, b in R, w in R^n}. A homogeneous p of
// degree k vanishes on L iff, grouping its coefficients by
// (s = xexp + yexp, l = |xexp|), every group sums to zero.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ridgekm::poly {

using Rational = boost::multiprecision::cpp_rational;
using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& m);

/// Sparse polynomial in n_vars variables; zero coefficients are never stored.
/// With an even variable count the first half are named x1..xn and the second
/// half y1..yn.
class MPoly {
 public:
  explicit MPoly(std::size_t n_vars = 0) : n_vars_(n_vars) {}

  static MPoly constant(std::size_t n_vars, const Rational& c);
  static MPoly variable(std::size_t n_vars, std::size_t index);
  static MPoly monomial(std::size_t n_vars, MultiIndex exponents, const Rational& c = 1);

  std::size_t n_vars() const noexcept { return n_vars_; }
  const std::map<MultiIndex, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const MultiIndex& m) const;

  void add_term(const MultiIndex& m, const Rational& c);

  /// Largest total degree; 0 for the zero polynomial.
  unsigned degree() const;
  bool is_homogeneous() const;
  MPoly homogeneous_part(unsigned k) const;
  /// Nonzero homogeneous parts by degree.
  std::map<unsigned, MPoly> homogeneous_parts() const;

  /// Same polynomial over more variables. Kernel polynomials (even count) keep
  /// their x/y split: x_i stays x_i and y_i stays y_i.
  MPoly widened_kernel(std::size_t n) const;

  double evaluate(std::span<const double> z) const;
  /// sum_m |a_m| |z^m|, the natural size for rounding error in evaluate().
  double magnitude(std::span<const double> z) const;

  MPoly pow(unsigned e) const;
  std::string to_string() const;

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const Rational& c, const MPoly& a);
  friend MPoly operator-(const MPoly& a);
  friend bool operator==(const MPoly& a, const MPoly& b) = default;

 private:
  std::size_t n_vars_;
  std::map<MultiIndex, Rational> terms_;
};

/// Multiindices m with 0 <= m_i <= s_i and |m| = l, in lexicographic monomial
/// order (x1 > x2 > ...), so (1,0) precedes (0,1).
struct DeltaSet {
  MultiIndex s;
  unsigned l;
  std::vector<MultiIndex> members;
};

DeltaSet enumerate_delta(const MultiIndex& s, unsigned l);

/// All s in Z_+^n with |s| = k, in the same order.
std::vector<MultiIndex> compositions(std::size_t n, unsigned k);

/// (xexp, yexp) -> (xexp, xexp + yexp)
MultiIndex to_sum_coordinates(const MultiIndex& m);
/// (xexp, s) -> (xexp, s - xexp); throws InputError unless xexp <= s.
MultiIndex from_sum_coordinates(const MultiIndex& m);

struct BasisLimits {
  std::size_t max_n = 4;
  unsigned max_k = 8;
};

/// Binomials x^kappa y^{s-kappa} - x^m y^{s-m} over every (s, l) with |s| = k,
/// 0 < l < k and #Delta_{s,l} > 1, where kappa is the first member of
/// Delta_{s,l}. They span the degree-k polynomials vanishing on L.
std::vector<MPoly> vanishing_basis(std::size_t n, unsigned k, BasisLimits limits = {});

/// Sum over (s, l) of (#Delta_{s,l} - 1), the dimension of that space.
std::size_t vanishing_dimension(std::size_t n, unsigned k);

/// Exact decision: p(a w, b w) == 0 for all a, b, w.
bool vanishes_on_L(const MPoly& p);

/// sum_m p_m D^m q with exact factorial factors.
MPoly apply_diff(const MPoly& p, const MPoly& q);

struct ClosureWitness {
  MPoly p;       ///< vanishing basis element
  MPoly result;  ///< p(D) q, nonzero
};

/// First basis element p with p(D) q != 0, if any. q must be homogeneous.
std::optional<ClosureWitness> closure_witness(const MPoly& q, BasisLimits limits = {});

/// q (homogeneous, over 2n variables) lies in the closure iff p(D) q = 0 for
/// every vanishing basis element of its degree.
bool in_closure_homogeneous(const MPoly& q, BasisLimits limits = {});

/// Point of L: z = (alpha w, beta w).
std::vector<double> point_on_L(double alpha, double beta, std::span<const double> w);

/// Random point (alpha w, beta w) with alpha, beta ~ N(0,1), w ~ N(0, I_n).
std::vector<double> random_point_on_L(std::size_t n, std::mt19937_64& rng);

struct VanishingWitness {
  std::vector<double> z;
  double value;
  double magnitude;
};

/// Searches random points of L for |p(z)| > 1e-6 * magnitude(z).
std::optional<VanishingWitness> find_nonvanishing_point(const MPoly& p, std::mt19937_64& rng,
                                                        std::size_t attempts = 1000);

/// <z, a>^k expanded exactly; a is converted to exact binary rationals.
MPoly linear_form_power(std::span<const double> a, unsigned k);
MPoly linear_form_power(std::span<const Rational> a, unsigned k);

/// Parses `coef * x1^a x2^b y1^c y2^d +/- ...`. Products, parentheses, powers
/// and implicit multiplication are accepted. Variables are x<i> and y<i>; the
/// result has 2 * max(n_min, largest index) variables.
MPoly parse_poly(std::string_view text, std::size_t n_min = 0);

}  // namespace ridgekm::poly
