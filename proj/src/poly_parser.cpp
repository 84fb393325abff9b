// Recursive-descent parser for kernel polynomials:
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := power { ['*'] power }
//   power   := primary [ '^' integer ]
//   primary := number [ '/' number ] | ('x'|'y') integer | '(' expr ')'
#include <cctype>
#include <string>

#include "ridgekm/error.hpp"
#include "ridgekm/ridgepoly.hpp"

namespace ridgekm::poly {

namespace {

struct Var {
  bool is_y;
  std::size_t index;  // 1-based
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  MPoly parse() {
    MPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_primary() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'x' || c == 'y' || c == '(';
  }

  std::size_t vars() const { return 2 * n_; }

  MPoly expr() {
    MPoly acc(vars());
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = text_[pos_++] == '-';
    acc = negate ? -term() : term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      acc = c == '+' ? acc + term() : acc - term();
    }
    return acc;
  }

  MPoly term() {
    MPoly acc = power();
    for (;;) {
      if (peek() == '*') {
        ++pos_;
        acc = acc * power();
      } else if (starts_primary()) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  MPoly power() {
    MPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an integer exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Rational number() {
    skip_ws();
    const std::size_t start = pos_;
    std::string digits;
    long long exp10 = 0;
    bool seen_dot = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (seen_dot) --exp10;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("expected a number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      bool neg = false;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) neg = text_[pos_++] == '-';
      const std::size_t es = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (es == pos_) fail("expected exponent digits");
      const long long e = std::stoll(std::string(text_.substr(es, pos_ - es)));
      exp10 += neg ? -e : e;
    }
    Rational value{boost::multiprecision::cpp_int(digits)};
    boost::multiprecision::cpp_int ten_pow = boost::multiprecision::pow(
        boost::multiprecision::cpp_int(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0) value /= Rational(ten_pow);
    else value *= Rational(ten_pow);
    return value;
  }

  Var variable() {
    const bool is_y = text_[pos_] == 'y';
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("variable needs an index, e.g. x1");
    const std::size_t idx = std::stoul(std::string(text_.substr(start, pos_ - start)));
    if (idx == 0) fail("variable indices start at 1");
    if (idx > n_) fail("variable index exceeds n");
    return {is_y, idx};
  }

  MPoly primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      MPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x' || c == 'y') {
      const Var v = variable();
      return MPoly::variable(vars(), v.is_y ? n_ + v.index - 1 : v.index - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      Rational value = number();
      if (peek() == '/') {
        ++pos_;
        const Rational den = number();
        if (den == 0) fail("division by zero");
        value /= den;
      }
      return MPoly::constant(vars(), value);
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

// Largest variable index mentioned, so the variable count is known up front.
std::size_t scan_max_index(std::string_view text) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x' && text[i] != 'y') continue;
    std::size_t j = i + 1;
    std::size_t v = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) v = v * 10 + (text[j++] - '0');
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

MPoly parse_poly(std::string_view text, std::size_t n_min) {
  const std::size_t n = std::max<std::size_t>({n_min, scan_max_index(text), 1});
  return Parser(text, n).parse();
}

}  // namespace ridgekm::poly
