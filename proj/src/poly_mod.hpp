#pragma once

// Dense polynomial arithmetic over Z/p, coefficients constant term first.

#include <cstdint>
#include <vector>

namespace apx::polymod {

using Poly = std::vector<std::int64_t>;

std::int64_t residue(std::int64_t c, std::int64_t p);
void trim(Poly& f);
Poly reduce(const Poly& f, std::int64_t p);
Poly mul(const Poly& a, const Poly& b, std::int64_t p);
// Remainder modulo a monic polynomial.
Poly rem_monic(Poly a, const Poly& m, std::int64_t p);
bool is_irreducible(const Poly& f, std::int64_t p);

// Base-p digit codec. encode throws Error{budget_exceeded} when the code
// would leave the positive int64 range.
Poly decode(std::int64_t code, std::int64_t p, std::size_t min_len = 0);
std::int64_t encode(const Poly& digits, std::int64_t p);

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp,
                          std::uint64_t limit);

}  // namespace apx::polymod
