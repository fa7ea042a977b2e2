#include "apx/setalg.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "apx/covering.hpp"
#include "apx/error.hpp"
#include "setalg_kernels.hpp"

namespace apx {

FiniteSet sumset(const FiniteSet& a, const FiniteSet& b, const Limits& limits) {
  return kernels::combine(a, b, kernels::Op::add, limits);
}

FiniteSet prodset(const FiniteSet& a, const FiniteSet& b, const Limits& limits) {
  return kernels::combine(a, b, kernels::Op::mul, limits);
}

FiniteSet difference_set(const FiniteSet& a, const FiniteSet& b,
                         const Limits& limits) {
  return sumset(a, negate(b), limits);
}

FiniteSet negate(const FiniteSet& a) {
  const Ring& r = *a.ring();
  return kernels::map_elements(a, [&](Element x) { return r.neg(x); },
                               a.representation());
}

FiniteSet symmetrize(const FiniteSet& a) { return set_union(a, negate(a)); }

FiniteSet translate(Element t, const FiniteSet& a) {
  const Ring& r = *a.ring();
  if (!r.contains(t))
    throw Error(ErrorKind::cross_ring, "translate is not an element of " + r.dsl());
  return kernels::map_elements(a, [&](Element x) { return r.add(t, x); },
                               a.representation());
}

FiniteSet left_multiply(Element c, const FiniteSet& a) {
  const Ring& r = *a.ring();
  return kernels::map_elements(a, [&](Element x) { return r.mul(c, x); },
                               a.representation());
}

bool is_symmetric(const FiniteSet& a) {
  const Ring& r = *a.ring();
  return std::all_of(a.begin(), a.end(),
                     [&](Element x) { return a.contains(r.neg(x)); });
}

FiniteSet growth_step(const FiniteSet& a, const Limits& limits) {
  return sumset(prodset(a, a, limits), sumset(a, a, limits), limits);
}

GrowthProfile growth_sequence(const FiniteSet& x, std::size_t n_max,
                              bool with_covering, const Limits& limits) {
  GrowthProfile profile{x, {}};
  FiniteSet current = x;
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) current = growth_step(current, limits);
    GrowthEntry entry{n, current, std::nullopt, false};
    if (with_covering && !x.empty()) {
      auto w = cover_by_translates(current, x, /*exact=*/true, limits);
      entry.covering_number = w.size();
      entry.covering_optimal = w.optimal;
    } else if (with_covering) {
      entry.covering_number = 0;
      entry.covering_optimal = true;
    }
    profile.entries.push_back(std::move(entry));
  }
  return profile;
}

PowerProducts power_products(const FiniteSet& x, std::size_t m,
                             const Limits& limits) {
  if (m < 1) throw Error(ErrorKind::precondition, "power_products needs m >= 1");
  PowerProducts out{{x}, x, x};
  for (std::size_t k = 2; k <= m; ++k) {
    out.powers.push_back(prodset(out.powers.back(), x, limits));
    out.at_most = set_union(out.at_most, out.powers.back());
    if (out.at_most.size() > limits.cardinality_cap)
      throw Error(ErrorKind::budget_exceeded, "X^{<=m} exceeds the cardinality cap");
  }
  out.exact = out.powers.back();
  return out;
}

FiniteSet iterated_sum(const FiniteSet& a, std::size_t m, const Limits& limits) {
  if (m < 1) throw Error(ErrorKind::precondition, "iterated_sum needs m >= 1");
  FiniteSet acc = a;
  for (std::size_t k = 2; k <= m; ++k) acc = sumset(acc, a, limits);
  return acc;
}

FiniteSet msum(const FiniteSet& x, std::size_t m, const Limits& limits) {
  return iterated_sum(power_products(x, m, limits).at_most, m, limits);
}

namespace {

// Insertion-ordered membership table, bit-indexed on small finite rings.
class Members {
 public:
  Members(const Ring& ring, const Limits& limits) {
    auto n = ring.cardinality();
    if (n && *n <= limits.dense_threshold) dense_.assign(*n, false);
  }

  bool insert(Element x) {
    if (!dense_.empty()) {
      auto i = static_cast<std::size_t>(x.code);
      if (dense_[i]) return false;
      dense_[i] = true;
    } else if (!sparse_.insert(x).second) {
      return false;
    }
    order_.push_back(x);
    return true;
  }

  const std::vector<Element>& order() const { return order_; }
  std::size_t size() const { return order_.size(); }

 private:
  std::vector<bool> dense_;
  std::unordered_set<Element, ElementHash> sparse_;
  std::vector<Element> order_;
};

// Semi-naive fixed point: every new element x is combined with all members
// present when x is processed; later members pair with x when they are
// processed themselves.
template <typename Expand>
ClosureResult run_closure(const FiniteSet& gens, std::uint64_t budget,
                          const Limits& limits, Expand expand) {
  const Ring& ring = *gens.ring();
  Members members(ring, limits);
  std::vector<Element> frontier, next;
  auto insert = [&](Element z) {
    if (members.insert(z)) next.push_back(z);
  };
  ClosureResult result{FiniteSet(gens.ring(), limits), false, 0, budget, false};
  bool exceeded = false;
  try {
    insert(ring.zero());
    for (Element g : gens) insert(g);
    frontier.swap(next);
    while (!frontier.empty() && !exceeded) {
      ++result.steps;
      for (Element x : frontier) {
        expand(x, members, insert);
        if (members.size() > budget) {
          exceeded = true;
          break;
        }
      }
      frontier.swap(next);
      next.clear();
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::budget_exceeded) throw;
    exceeded = true;
  }
  result.complete = !exceeded;
  result.generated = FiniteSet(gens.ring(), members.order(), limits);
  return result;
}

}  // namespace

ClosureResult closure(const FiniteSet& gens, std::uint64_t budget,
                      const Limits& limits) {
  if (budget < gens.size())
    throw Error(ErrorKind::precondition, "closure budget is smaller than the generator set");
  const Ring& ring = *gens.ring();
  return run_closure(gens, budget, limits,
                     [&](Element x, const Members& m, auto& insert) {
                       insert(ring.neg(x));
                       const std::size_t count = m.size();
                       for (std::size_t j = 0; j < count; ++j) {
                         Element y = m.order()[j];
                         insert(ring.add(x, y));
                         insert(ring.mul(x, y));
                         insert(ring.mul(y, x));
                       }
                     });
}

ClosureResult ideal_generated(const FiniteSet& gens, std::uint64_t budget,
                              const Limits& limits) {
  const Ring& ring = *gens.ring();
  auto n = ring.cardinality();
  const bool exhaustive = n && *n <= limits.dense_threshold;
  std::vector<Element> multipliers =
      exhaustive ? enumerate(ring) : ring.small_elements(64);
  for (Element g : gens) multipliers.push_back(g);
  auto result = run_closure(gens, budget, limits,
                            [&](Element x, const Members& m, auto& insert) {
                              insert(ring.neg(x));
                              const std::size_t count = m.size();
                              for (std::size_t j = 0; j < count; ++j)
                                insert(ring.add(x, m.order()[j]));
                              for (Element r : multipliers) {
                                insert(ring.mul(r, x));
                                insert(ring.mul(x, r));
                              }
                            });
  result.heuristic = !exhaustive;
  return result;
}

namespace serial {

namespace {
template <typename F>
FiniteSet pairwise(const FiniteSet& a, const FiniteSet& b, F f) {
  require_same_ring(a, b);
  std::set<Element> out;
  for (Element x : a)
    for (Element y : b) out.insert(f(x, y));
  return FiniteSet(a.ring(), std::vector<Element>(out.begin(), out.end()),
                   Representation::sparse);
}
}  // namespace

FiniteSet sumset(const FiniteSet& a, const FiniteSet& b) {
  const Ring& r = *a.ring();
  return pairwise(a, b, [&](Element x, Element y) { return r.add(x, y); });
}

FiniteSet prodset(const FiniteSet& a, const FiniteSet& b) {
  const Ring& r = *a.ring();
  return pairwise(a, b, [&](Element x, Element y) { return r.mul(x, y); });
}

FiniteSet closure(const FiniteSet& gens) {
  const Ring& r = *gens.ring();
  std::set<Element> s(gens.begin(), gens.end());
  s.insert(r.zero());
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Element> cur(s.begin(), s.end());
    for (Element x : cur) {
      changed |= s.insert(r.neg(x)).second;
      for (Element y : cur) {
        changed |= s.insert(r.add(x, y)).second;
        changed |= s.insert(r.mul(x, y)).second;
      }
    }
  }
  return FiniteSet(gens.ring(), std::vector<Element>(s.begin(), s.end()),
                   Representation::sparse);
}

}  // namespace serial

}  // namespace apx
