#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "apx/finite_set.hpp"

namespace apx {

// {x + y : x in a, y in b}
FiniteSet sumset(const FiniteSet& a, const FiniteSet& b, const Limits& limits = {});
// {x * y : x in a, y in b}
FiniteSet prodset(const FiniteSet& a, const FiniteSet& b, const Limits& limits = {});
// {x - y : x in a, y in b}
FiniteSet difference_set(const FiniteSet& a, const FiniteSet& b,
                         const Limits& limits = {});

FiniteSet negate(const FiniteSet& a);
// a ∪ (-a). Does not add 0.
FiniteSet symmetrize(const FiniteSet& a);
FiniteSet translate(Element t, const FiniteSet& a);
// {c * x : x in a}
FiniteSet left_multiply(Element c, const FiniteSet& a);
bool is_symmetric(const FiniteSet& a);

// a·a + (a + a)
FiniteSet growth_step(const FiniteSet& a, const Limits& limits = {});

struct GrowthEntry {
  std::size_t n = 0;
  FiniteSet set;
  // Translates of the base needed to cover this entry, when requested.
  std::optional<std::size_t> covering_number;
  bool covering_optimal = false;
};

struct GrowthProfile {
  FiniteSet base;
  std::vector<GrowthEntry> entries;
};

// X_0 = x, X_{n+1} = X_n·X_n + (X_n + X_n) for n < n_max.
GrowthProfile growth_sequence(const FiniteSet& x, std::size_t n_max,
                              bool with_covering, const Limits& limits = {});

struct PowerProducts {
  std::vector<FiniteSet> powers;  // powers[k-1] = X^k
  FiniteSet exact;                // X^m
  FiniteSet at_most;              // X^1 ∪ ... ∪ X^m
};

PowerProducts power_products(const FiniteSet& x, std::size_t m,
                             const Limits& limits = {});

// mA = A + ... + A (m summands), m >= 1.
FiniteSet iterated_sum(const FiniteSet& a, std::size_t m, const Limits& limits = {});
// m(X^{<=m}): sums of m products of at most m elements of x.
FiniteSet msum(const FiniteSet& x, std::size_t m, const Limits& limits = {});

struct ClosureResult {
  FiniteSet generated;  // partial when !complete
  bool complete = false;
  std::size_t steps = 0;
  std::uint64_t budget = 0;
  // Set for ideals of lazy rings, where only sampled multipliers are used.
  bool heuristic = false;
};

// Smallest subring containing gens (non-unital: closed under +, -, *).
ClosureResult closure(const FiniteSet& gens, std::uint64_t budget,
                      const Limits& limits = {});

// Smallest two-sided ideal of the ambient ring containing gens.
ClosureResult ideal_generated(const FiniteSet& gens, std::uint64_t budget,
                              const Limits& limits = {});

// Serial std::set-based reference implementations, kept for testing and
// benchmarking the parallel kernels.
namespace serial {
FiniteSet sumset(const FiniteSet& a, const FiniteSet& b);
FiniteSet prodset(const FiniteSet& a, const FiniteSet& b);
FiniteSet closure(const FiniteSet& gens);
}  // namespace serial

}  // namespace apx
