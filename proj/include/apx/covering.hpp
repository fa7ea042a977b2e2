#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apx/finite_set.hpp"

namespace apx {

enum class CoverMethod { exact, greedy, constructive };

const char* to_string(CoverMethod m);

struct SolverStats {
  std::uint64_t nodes = 0;
  double seconds = 0;
  bool node_limit_hit = false;
};

// target ⊆ ∪_i (translates[i] + base).
struct CoverWitness {
  FiniteSet target;
  FiniteSet base;
  std::vector<Element> translates;  // canonical order
  bool optimal = false;             // set only by the exact solver
  CoverMethod method = CoverMethod::greedy;
  SolverStats stats;

  std::size_t size() const { return translates.size(); }
};

struct WitnessCheck {
  bool ok = true;
  std::optional<Element> uncovered;  // first uncovered target element
};

WitnessCheck verify_witness(const CoverWitness& w);
// Throws Error{verification_failed} naming `context` and the uncovered element.
void require_verified(const CoverWitness& w, std::string_view context);

// Greedy set cover: each round takes the pool translate covering the most
// uncovered target elements, ties to the smallest translate.
// Throws Error{uncoverable} if some target element lies in no translate.
CoverWitness cover_greedy(const FiniteSet& target, const FiniteSet& base,
                          const FiniteSet& pool, const Limits& limits = {});

// Minimum-cardinality cover by branch and bound. Branches on the uncovered
// element with the fewest covering translates and prunes with
// ceil(|uncovered| / best coverage) against the greedy incumbent. When
// limits.node_limit is exceeded the incumbent is returned with
// optimal = false.
CoverWitness cover_exact(const FiniteSet& target, const FiniteSet& base,
                         const FiniteSet& pool, const Limits& limits = {});

// Cover of `target` by translates of `base` drawn from target - base, which
// contains every translate that meets the target.
CoverWitness cover_by_translates(const FiniteSet& target, const FiniteSet& base,
                                 bool exact, const Limits& limits = {});

enum class ApproxMode { ring, group };

const char* to_string(ApproxMode m);

// Proof that an element f of F lies in the ring generated by X:
//   member:  f = a            (a in X)
//   product: f = a*b - c      (a, b, c in X)
//   sum:     f = a + b - c    (a, b, c in X)
struct Derivation {
  enum class Kind { member, product, sum };
  Kind kind = Kind::member;
  Element a, b, c;

  Element evaluate(const Ring& r) const;
};

struct ApproxCertificate {
  FiniteSet x;
  std::size_t k = 0;
  FiniteSet f;
  ApproxMode mode = ApproxMode::ring;
  bool minimal = false;
  std::vector<Derivation> derivations;  // parallel to f.elements()
  SolverStats stats;
  // Least n <= 3 with F ⊆ X_n, when found within the cardinality cap.
  std::optional<std::size_t> f_growth_level;
};

// X·X ∪ (X+X) (ring mode) or X+X (group mode).
FiniteSet approximation_target(const FiniteSet& x, ApproxMode mode,
                               const Limits& limits = {});

// Smallest (exact) or greedy K with target ⊆ F + X, F drawn from target - X.
// Throws Error{not_symmetric} unless X = -X, Error{precondition} on empty X.
ApproxCertificate approx_constant(const FiniteSet& x, ApproxMode mode, bool exact,
                                  const Limits& limits = {});

// Certificate for a caller-supplied F; throws Error{verification_failed} if
// F does not work or some element of F has no derivation of the forms above.
ApproxCertificate certificate_for(const FiniteSet& x, const FiniteSet& f,
                                  ApproxMode mode, const Limits& limits = {});

struct CertificateCheck {
  bool ok = true;
  std::string reason;
};

CertificateCheck verify_certificate(const ApproxCertificate& cert,
                                    const Limits& limits = {});

struct CommensurabilityResult {
  FiniteSet a;
  FiniteSet b;
  std::optional<std::size_t> k_ab;  // translates of b covering a
  std::optional<std::size_t> k_ba;  // translates of a covering b
  std::optional<CoverWitness> ab;
  std::optional<CoverWitness> ba;
  bool optimal = false;

  // max(k_ab, k_ba), nullopt when either direction is uncoverable.
  std::optional<std::size_t> constant() const;
};

CommensurabilityResult commensurability(const FiniteSet& a, const FiniteSet& b,
                                        bool exact, const Limits& limits = {});

struct GenericityResult {
  bool generic = false;
  std::optional<CoverWitness> witness;  // best cover found, if any
};

// Whether at most `bound` translates of d cover x.
GenericityResult is_generic(const FiniteSet& d, const FiniteSet& x,
                            std::size_t bound, const Limits& limits = {});

}  // namespace apx
