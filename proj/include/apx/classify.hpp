#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apx/covering.hpp"

namespace apx {

using ElementPair = std::pair<Element, Element>;

// 4X + X*(4X), 4X = X+X+X+X.
FiniteSet core_set(const FiniteSet& x, const Limits& limits = {});

struct SubringCheck {
  bool ok = true;
  // Failing operation: "empty", "neg", "add" or "mul".
  std::string operation;
  std::optional<ElementPair> violation;
};

// Nonempty, s = -s, s+s ⊆ s and s*s ⊆ s.
SubringCheck is_subring(const FiniteSet& s);

struct ZeroDivisorCheck {
  bool domain = true;
  bool known = false;    // backend is a domain by construction
  bool sampled = false;  // random pairs instead of all pairs
  std::uint64_t pairs_checked = 0;
  std::optional<ElementPair> witness;  // x*y = 0 with x, y nonzero
};

// Exhaustive on finite rings with at most 2^12 elements, 10^5 seeded random
// pairs above that. Throws Error{precondition} on infinite non-domains.
ZeroDivisorCheck check_zero_divisors(const Ring& r, std::uint64_t seed = 0);

enum class Verdict { small, structured, counterexample_candidate };
const char* to_string(Verdict v);

struct ClassifyOptions {
  std::optional<std::size_t> small_threshold;  // default 4*k^2
  bool exact = true;
  // Replace the ambient domain hypothesis by: no c in Y, w in
  // 2(Y*Y + (Y+Y)), both nonzero, with c*w = 0 or w*c = 0 (Y = core).
  bool weak_hypothesis = false;
  std::uint64_t seed = 0;
  // Reuse a hypothesis check already run on the ambient ring.
  std::optional<ZeroDivisorCheck> hypothesis;
  Limits limits;
};

struct ClassificationReport {
  FiniteSet x;
  ApproxCertificate certificate;
  std::size_t k = 0;
  FiniteSet core;
  SubringCheck core_subring;
  std::optional<CommensurabilityResult> commensurability;
  std::optional<std::size_t> commensurability_to_x;
  std::uint64_t k11_bound = 0;
  std::size_t small_threshold = 0;
  Verdict verdict = Verdict::small;
  ZeroDivisorCheck hypothesis;
  bool weak_hypothesis_used = false;
  std::optional<ElementPair> weak_violation;
};

// Throws Error{zero_divisor_found} when the hypothesis fails.
ClassificationReport nzd_classify(const FiniteSet& x, const ClassifyOptions& opts = {});

enum class SearchStrategy { generated, seeded, exhaustive };
const char* to_string(SearchStrategy s);

struct SearchOptions {
  std::vector<SearchStrategy> strategies{SearchStrategy::generated, SearchStrategy::seeded,
                                         SearchStrategy::exhaustive};
  std::size_t exhaustive_limit = 32;
  bool exact = true;
  Limits limits;
};

struct SubringSearchResult {
  FiniteSet core;
  std::optional<FiniteSet> found;
  bool containment_ok = false;
  std::optional<std::size_t> commensurability;
  std::optional<CommensurabilityResult> detail;
  SearchStrategy strategy_used = SearchStrategy::generated;
  bool exhaustive = false;
  std::size_t candidates = 0;
};

// Subring S ⊆ core_set(x) of least commensurability with x; ties keep the
// candidate found first.
SubringSearchResult pos_char_search(const FiniteSet& x, const SearchOptions& opts = {});

struct ModelOptions {
  std::size_t depth_cap = 4;
  // Every U ∋ 0 is tested when the quotient has at most this many elements.
  std::size_t exhaustive_quotient = 13;
  std::size_t samples = 4096;
  std::uint64_t seed = 0;
  Limits limits;
};

struct ModelReport {
  FiniteSet x;
  FiniteSet generated;  // <x>
  FiniteSet ideal;
  std::size_t m = 0;    // least m with ideal ⊆ X_m
  std::size_t quotient_size = 0;

  bool clause_i = false;
  bool u_is_image = false;  // U = f(X_m); otherwise the cosets inside X_m
  std::vector<Element> u;   // quotient indices
  FiniteSet preimage_u;

  bool clause_ii = false;
  std::size_t max_genericity = 0;
  std::size_t subsets_tested = 0;
  bool all_subsets = false;
  std::optional<CoverWitness> ideal_witness;  // x by translates of the ideal

  bool clause_iii = false;
  std::optional<CommensurabilityResult> commensurability;

  bool passed() const { return clause_i && clause_ii && clause_iii; }
};

// Quotient of <x> by `ideal` and the three finite-model clauses.
// Throws Error{not_an_ideal} or Error{precondition} when the ideal lies in no
// X_m up to the depth cap.
ModelReport finite_model_check(const FiniteSet& x, const FiniteSet& ideal,
                               const ModelOptions& opts = {});

struct GallerySet {
  std::string name;
  FiniteSet set;
  std::map<std::string, std::string> properties;
};

// (t + K) ∪ {0} ∪ (-t + K) in GF(p^2), K the prime field.
GallerySet gallery_y_set(std::int64_t p);
// c0 + c1 t for c0, c1 in 0..p-1, in poly:<p> or in `ring`.
GallerySet gallery_linear_polys(std::int64_t p, RingHandle ring = nullptr);
// -n..n in int or in `ring`.
GallerySet gallery_interval(std::int64_t n, RingHandle ring = nullptr);

// Least monic irreducible quadratic over F_p, constant term first.
std::vector<std::int64_t> least_irreducible_quadratic(std::int64_t p);

struct TransferCheck {
  std::size_t commensurability = 0;
  std::optional<std::size_t> k_y;
  bool k_y_optimal = false;
  std::optional<std::size_t> n;  // least n with the translates of X covering Y in X_n
  bool contained = false;        // Y ⊆ X_{n+1}
};

// Y commensurable with an approximate subring X: Y's ring-mode constant and
// the growth level containing Y. Requires 0 in X and Y ⊆ <X>.
TransferCheck transfer_check(const FiniteSet& x, const FiniteSet& y,
                             const Limits& limits = {});

}  // namespace apx
