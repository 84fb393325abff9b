#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ridgekm::io {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Strict decimal parse of a whole token; throws ParseError (with `line`) on failure.
double parse_double(std::string_view token, std::size_t line = 0);
long long parse_int(std::string_view token, std::size_t line = 0);

std::vector<std::string_view> split_ws(std::string_view s);
std::vector<std::string_view> split_char(std::string_view s, char sep);
std::string_view trim(std::string_view s);

/// Line reader that tracks 1-based line numbers and skips blank lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  /// Next nonblank line; throws ParseError at end of input.
  std::string next(std::string_view expecting);
  bool eof();
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::string pending_;
  bool has_pending_ = false;
};

/// Joins values with single spaces using format_double.
std::string join(std::span<const double> values);

}  // namespace ridgekm::io
