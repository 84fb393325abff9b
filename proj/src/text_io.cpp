#include "ridgekm/text_io.hpp"

#include <charconv>
#include <system_error>

#include "ridgekm/error.hpp"

namespace ridgekm {

DivergenceError::DivergenceError(double spectral_norm, double lambda_n)
    : Error("divergence error: Neumann series needs lambda*N > ||K||, got ||K|| = " +
            io::format_double(spectral_norm) + ", lambda*N = " + io::format_double(lambda_n)),
      spectral_norm_(spectral_norm),
      lambda_n_(lambda_n) {}

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(line > 0 ? "parse error at line " + std::to_string(line) + ": " + what
                     : "parse error: " + what),
      line_(line) {}

}  // namespace ridgekm

namespace ridgekm::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ParseError("not a number: '" + std::string(token) + "'", line);
  return v;
}

long long parse_int(std::string_view token, std::size_t line) {
  token = trim(token);
  long long v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ParseError("not an integer: '" + std::string(token) + "'", line);
  return v;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_char(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

bool LineReader::eof() {
  if (has_pending_) return false;
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!trim(line).empty()) {
      pending_ = std::move(line);
      has_pending_ = true;
      return false;
    }
  }
  return true;
}

std::string LineReader::next(std::string_view expecting) {
  if (eof()) throw ParseError("unexpected end of input, expected " + std::string(expecting), line_);
  has_pending_ = false;
  return std::move(pending_);
}

std::string join(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace ridgekm::io
