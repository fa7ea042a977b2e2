#pragma once

// Explicit translate sets built by following the covering induction:
// word covers, sum covers, covers of X^m and m(X^{<=m}), and the K^11 cover
// of 4X + X*4X.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "apx/covering.hpp"

namespace apx {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Formal expression over letters of X with a cached ring value.
struct Term {
  enum class Kind { zero, letter, left_mul, sum };
  Kind kind = Kind::zero;
  Element letter;  // letter, left_mul
  TermPtr left, right;  // left_mul: right only; sum: both
  Element value;
  // Size of the flattened sum of words.
  std::uint64_t words = 0;
  std::uint64_t letters = 0;
};

TermPtr term_zero(const Ring& r);
TermPtr term_letter(Element x);
TermPtr term_left_mul(const Ring& r, Element x, TermPtr t);
TermPtr term_sum(const Ring& r, TermPtr a, TermPtr b);

// A product x_{L-1} ... x_1 x_0, stored with word[0] = x_0.
using Word = std::vector<Element>;

Element evaluate_word(const Ring& r, const Word& w);
// Recomputes the value from the structure, ignoring the cache.
Element evaluate_term(const Ring& r, const Term& t);
// Sum-of-words expansion. Throws Error{budget_exceeded} past `limit` words.
std::vector<Word> flatten(const Term& t, std::size_t limit = std::size_t{1} << 16);
std::string render_term(const Ring& r, const Term& t);

// Translate values, each carrying one derivation. When a value is reached
// twice the derivation with fewer words (then fewer letters) is kept.
class DerivedSet {
 public:
  DerivedSet() = default;
  explicit DerivedSet(RingHandle ring) : ring_(std::move(ring)) {}

  bool insert(const TermPtr& t);
  std::size_t size() const { return terms_.size(); }
  const RingHandle& ring() const { return ring_; }
  const TermPtr& term(Element v) const { return terms_.at(v); }
  // Values in canonical order.
  std::vector<Element> values() const;
  FiniteSet to_set(const Limits& limits = {}) const;

 private:
  RingHandle ring_;
  std::unordered_map<Element, TermPtr, ElementHash> terms_;
};

struct ConstructiveOptions {
  // Replace each F_m by a greedy sub-cover of X^m before the next step.
  bool pruned = false;
  // Largest |X^m| for which bound_table runs the exact solver.
  std::size_t exact_target_limit = 512;
  Limits limits{std::uint64_t{1} << 20, std::uint64_t{1} << 20, 1'000'000,
                std::uint64_t{1} << 20};
};

struct Claim1Result {
  CoverWitness witness;  // target = (value of the word or sum) * X
  DerivedSet translates;
};

// Cover of (x_{L-1}...x_0) X: F for one letter, then x G + F per added
// letter. Requires a verified ring-mode certificate and letters in X.
Claim1Result claim1_cover(const Word& word, const ApproxCertificate& cert,
                          const Limits& limits = {});
// Cover of (w_{n-1} + ... + w_0) X, accumulated left to right:
// G = cover(w_0), then G = cover(w_i) + G + F. The empty sum is covered by
// {0} when 0 is in X and by F otherwise.
Claim1Result claim1_sum_cover(const std::vector<Word>& words,
                              const ApproxCertificate& cert,
                              const Limits& limits = {});

struct Claim2Level {
  std::size_t m = 1;
  DerivedSet f_m;               // translates used at this level
  std::size_t full_size = 0;    // |F_m| before pruning
  CoverWitness witness;         // X^m by translates of X
  // Sum of |F_x| over x in F_{m-1}, times K^2 (1 at m = 1); saturates.
  std::uint64_t bound_formula_value = 1;
};

struct Claim2Result {
  std::vector<Claim2Level> levels;  // levels[i].m == i + 1
};

// F_1 = {0}, F_{m+1} = G_m + F + F with G_m the union of the claim-1 covers
// of x X for x in F_m.
Claim2Result claim2_cover(std::size_t m, const ApproxCertificate& cert,
                          const ConstructiveOptions& opts = {});

// m(X^{<=m}) by the translates m F'_m + (m-1) F, F'_m = F_1 u ... u F_m.
CoverWitness msum_cover(std::size_t m, const ApproxCertificate& cert,
                        const ConstructiveOptions& opts = {});

// 4X + X*4X by the translates S_11, the 11-fold sumset of F.
// Throws Error{verification_failed} if |S_11| > K^11.
CoverWitness k11_cover(const ApproxCertificate& cert, const Limits& limits = {});

struct ConstructiveCoverReport {
  ApproxCertificate certificate;
  std::size_t m = 1;
  CoverWitness constructed;
  std::size_t constructed_size = 0;
  std::optional<std::size_t> pruned_size;
  std::optional<std::size_t> exact_size;  // nullopt when skipped
  bool exact_optimal = false;
  std::uint64_t bound_formula_value = 1;

  std::optional<double> ratio() const;
};

std::vector<ConstructiveCoverReport> bound_table(const ApproxCertificate& cert,
                                                 std::size_t m_max,
                                                 const ConstructiveOptions& opts = {});

// a^e with saturation at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t a, unsigned e);

}  // namespace apx
