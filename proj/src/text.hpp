#pragma once

// Small lexical helpers shared by the DSL, element and set parsers.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace apx::text {

std::string_view trim(std::string_view s);

// Signed decimal integer occupying the whole of `s` (after trimming).
// `offset` is added to reported error positions.
std::int64_t parse_integer(std::string_view s, std::size_t offset = 0);

// Splits at commas that are not nested inside (), [] or {}.
std::vector<std::string_view> split_top_level(std::string_view s,
                                              std::size_t offset = 0);

// Polynomial in `t` with integer coefficients, e.g. "t^2+2t-1", "3*t".
// Result is constant term first, with trailing zeros removed.
std::vector<std::int64_t> parse_polynomial(std::string_view s,
                                           std::size_t offset = 0);

// Renders residues in [0, p) highest degree first; "0" for the zero vector.
std::string render_polynomial(const std::vector<std::int64_t>& coeffs);

}  // namespace apx::text
