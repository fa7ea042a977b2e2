#include "text.hpp"

#include <cctype>

#include "apx/error.hpp"

namespace apx::text {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

namespace {

std::size_t leading_space(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

// Parses digits at s[i..], advancing i.
std::int64_t read_digits(std::string_view s, std::size_t& i,
                         std::size_t offset) {
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
    throw SyntaxError("expected digit", offset + i);
  std::int64_t v = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    if (__builtin_mul_overflow(v, 10, &v) ||
        __builtin_add_overflow(v, s[i] - '0', &v))
      throw SyntaxError("integer literal out of range", offset + i);
    ++i;
  }
  return v;
}

}  // namespace

std::int64_t parse_integer(std::string_view s, std::size_t offset) {
  offset += leading_space(s);
  s = trim(s);
  if (s.empty()) throw SyntaxError("expected integer", offset);
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    ++i;
  }
  std::int64_t v = read_digits(s, i, offset);
  if (i != s.size()) throw SyntaxError("unexpected character", offset + i);
  return negative ? -v : v;
}

std::vector<std::string_view> split_top_level(std::string_view s,
                                              std::size_t offset) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      if (--depth < 0) throw SyntaxError("unbalanced bracket", offset + i);
    } else if (c == ',' && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw SyntaxError("unbalanced bracket", offset + s.size());
  parts.push_back(s.substr(start));
  return parts;
}

std::vector<std::int64_t> parse_polynomial(std::string_view s,
                                           std::size_t offset) {
  std::vector<std::int64_t> coeffs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto accumulate = [&](std::size_t degree, std::int64_t c, std::size_t pos) {
    if (degree > 4096) throw SyntaxError("degree too large", offset + pos);
    if (coeffs.size() <= degree) coeffs.resize(degree + 1, 0);
    if (__builtin_add_overflow(coeffs[degree], c, &coeffs[degree]))
      throw SyntaxError("coefficient out of range", offset + pos);
  };

  skip();
  if (i == s.size()) throw SyntaxError("expected polynomial", offset + i);
  bool first = true;
  while (true) {
    skip();
    std::size_t term_start = i;
    std::int64_t sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw SyntaxError("expected '+' or '-'", offset + i);
    }
    first = false;

    bool has_coeff = false;
    std::int64_t coeff = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = read_digits(s, i, offset);
      has_coeff = true;
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip();
        if (i >= s.size() || s[i] != 't')
          throw SyntaxError("expected 't' after '*'", offset + i);
      }
    }
    std::size_t degree = 0;
    if (i < s.size() && s[i] == 't') {
      ++i;
      degree = 1;
      skip();
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip();
        degree = static_cast<std::size_t>(read_digits(s, i, offset));
      }
    } else if (!has_coeff) {
      throw SyntaxError("expected coefficient or 't'", offset + i);
    }
    accumulate(degree, sign * coeff, term_start);
    skip();
    if (i == s.size()) break;
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

std::string render_polynomial(const std::vector<std::int64_t>& coeffs) {
  std::string out;
  for (std::size_t d = coeffs.size(); d-- > 0;) {
    std::int64_t c = coeffs[d];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (d == 0 || c != 1) out += std::to_string(c);
    if (d >= 1) out += 't';
    if (d >= 2) out += '^' + std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

}  // namespace apx::text
