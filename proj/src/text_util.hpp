#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "causal/errors.hpp"
#include "causal/rational.hpp"

namespace causal::detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

/// Splits text into non-empty lines of whitespace-separated tokens, dropping
/// '#' comments. Each character of `separators`, and "->", is always a token
/// of its own even without surrounding spaces.
inline std::vector<Line> split_lines(std::string_view text, std::string_view separators) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) line.tokens.push_back(std::move(cur));
      cur.clear();
    };
    for (std::size_t k = 0; k < raw.size(); ++k) {
      const char c = raw[k];
      if (c == ' ' || c == '\t' || c == '\r') {
        flush();
      } else if (c == '-' && k + 1 < raw.size() && raw[k + 1] == '>') {
        flush();
        line.tokens.emplace_back("->");
        ++k;
      } else if (separators.find(c) != std::string_view::npos) {
        flush();
        line.tokens.emplace_back(1, c);
      } else {
        cur += c;
      }
    }
    flush();
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline std::size_t parse_index(const std::string& token, const Line& line, const std::string& source) {
  std::size_t v = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ParseError(source, line.number, "expected a non-negative integer, got '" + token + "'");
  return v;
}

inline std::size_t parse_size(const std::string& token, const Line& line, const std::string& source) {
  const auto v = parse_index(token, line, source);
  if (v == 0) throw ParseError(source, line.number, "alphabet sizes must be positive");
  return v;
}

inline Rational parse_rational(const std::string& token, const Line& line, const std::string& source) {
  try {
    return Rational::parse(token);
  } catch (const std::exception&) {
    throw ParseError(source, line.number, "expected a rational p/q, got '" + token + "'");
  }
}

}  // namespace causal::detail
