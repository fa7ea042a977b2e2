#include "apx/covering.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "apx/error.hpp"
#include "apx/setalg.hpp"
#include "bitset.hpp"

namespace apx {

const char* to_string(CoverMethod m) {
  switch (m) {
    case CoverMethod::exact: return "exact";
    case CoverMethod::greedy: return "greedy";
    case CoverMethod::constructive: return "constructive";
  }
  return "unknown";
}

const char* to_string(ApproxMode m) {
  return m == ApproxMode::ring ? "ring" : "group";
}

WitnessCheck verify_witness(const CoverWitness& w) {
  require_same_ring(w.target, w.base);
  const Ring& r = *w.target.ring();
  std::vector<Element> ts(w.translates);
  std::sort(ts.begin(), ts.end());
  for (Element a : w.target) {
    // a ∈ t + base  ⇔  a - t ∈ base
    bool hit = std::any_of(ts.begin(), ts.end(), [&](Element t) {
      return r.contains(t) && w.base.contains(r.sub(a, t));
    });
    if (!hit) return {false, a};
  }
  return {true, std::nullopt};
}

void require_verified(const CoverWitness& w, std::string_view context) {
  auto check = verify_witness(w);
  if (!check.ok)
    throw Error(ErrorKind::verification_failed,
                std::string(context) + ": target element " +
                    w.target.ring()->render(*check.uncovered) +
                    " is not covered by the " + std::to_string(w.size()) +
                    " translates");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Target elements as universe indices, one coverage set per useful pool
// translate. labels stay in canonical order.
struct CoverInstance {
  std::size_t universe = 0;
  std::vector<Element> labels;
  std::vector<Bits> sets;
};

CoverInstance build_instance(const FiniteSet& target, const FiniteSet& base,
                             const FiniteSet& pool) {
  require_same_ring(target, base);
  require_same_ring(target, pool);
  const Ring& r = *target.ring();
  const auto ep = pool.elements();
  std::vector<Bits> covered(ep.size(), Bits(target.size()));

#pragma omp parallel for schedule(dynamic, 32) if (ep.size() * base.size() > 4096)
  for (std::size_t i = 0; i < ep.size(); ++i) {
    for (Element y : base) {
      std::size_t k = target.rank(r.add(ep[i], y));
      if (k < target.size()) covered[i].set(k);
    }
  }

  CoverInstance inst;
  inst.universe = target.size();
  Bits all(target.size());
  for (std::size_t i = 0; i < ep.size(); ++i) {
    if (covered[i].none()) continue;
    all.or_with(covered[i]);
    inst.labels.push_back(ep[i]);
    inst.sets.push_back(std::move(covered[i]));
  }
  if (all.count() != target.size()) {
    Bits missing = Bits::full(target.size());
    missing.and_not(all);
    throw Error(ErrorKind::uncoverable,
                "target element " + r.render(target.elements()[missing.first()]) +
                    " lies in no pool translate of the base");
  }
  return inst;
}

std::vector<std::size_t> greedy_indices(const CoverInstance& inst) {
  std::vector<std::size_t> chosen;
  Bits uncovered = Bits::full(inst.universe);
  while (!uncovered.none()) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
      std::size_t gain = inst.sets[i].count_and(uncovered);
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    chosen.push_back(best);
    uncovered.and_not(inst.sets[best]);
  }
  return chosen;
}

CoverWitness make_witness(const FiniteSet& target, const FiniteSet& base,
                          const CoverInstance& inst,
                          const std::vector<std::size_t>& chosen,
                          CoverMethod method, bool optimal, SolverStats stats) {
  CoverWitness w{target, base, {}, optimal, method, stats};
  for (auto i : chosen) w.translates.push_back(inst.labels[i]);
  std::sort(w.translates.begin(), w.translates.end());
  require_verified(w, std::string(to_string(method)) + " cover");
  return w;
}

class BranchAndBound {
 public:
  BranchAndBound(const CoverInstance& inst, std::uint64_t node_limit)
      : inst_(inst), node_limit_(node_limit), containing_(inst.universe) {
    // Drop translates whose coverage is contained in another's; among equal
    // sets the smallest translate survives.
    const std::size_t n = inst.sets.size();
    std::vector<bool> keep(n, true);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n && keep[i]; ++j) {
        if (i == j || !keep[j]) continue;
        if (inst.sets[i].subset_of(inst.sets[j]) &&
            (inst.sets[i] != inst.sets[j] || j < i))
          keep[i] = false;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep[i]) continue;
      active_.push_back(i);
      inst.sets[i].for_each([&](std::size_t e) { containing_[e].push_back(i); });
    }
  }

  void solve(std::vector<std::size_t> incumbent) {
    best_ = std::move(incumbent);
    std::vector<std::size_t> chosen;
    dfs(chosen, Bits::full(inst_.universe));
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

 private:
  void dfs(std::vector<std::size_t>& chosen, const Bits& uncovered) {
    if (aborted_) return;
    if (++nodes_ > node_limit_) {
      aborted_ = true;
      return;
    }
    if (uncovered.none()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + 1 >= best_.size()) return;

    const std::size_t remaining = uncovered.count();
    std::size_t max_gain = 0;
    for (auto i : active_)
      max_gain = std::max(max_gain, inst_.sets[i].count_and(uncovered));
    const std::size_t lower = (remaining + max_gain - 1) / max_gain;
    if (chosen.size() + lower >= best_.size()) return;

    std::size_t pivot = inst_.universe, fewest = SIZE_MAX;
    uncovered.for_each([&](std::size_t e) {
      if (containing_[e].size() < fewest) {
        fewest = containing_[e].size();
        pivot = e;
      }
    });

    std::vector<std::pair<std::size_t, std::size_t>> order;  // (-gain, index)
    for (auto i : containing_[pivot])
      order.emplace_back(inst_.universe - inst_.sets[i].count_and(uncovered), i);
    std::sort(order.begin(), order.end());
    for (auto [neg_gain, i] : order) {
      Bits next = uncovered;
      next.and_not(inst_.sets[i]);
      chosen.push_back(i);
      dfs(chosen, next);
      chosen.pop_back();
      if (aborted_) return;
    }
  }

  const CoverInstance& inst_;
  std::uint64_t node_limit_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

CoverWitness cover_greedy(const FiniteSet& target, const FiniteSet& base,
                          const FiniteSet& pool, const Limits&) {
  auto t0 = Clock::now();
  if (target.empty()) return CoverWitness{target, base, {}, false, CoverMethod::greedy, {}};
  if (base.empty())
    throw Error(ErrorKind::uncoverable, "cannot cover a nonempty target with an empty base");
  auto inst = build_instance(target, base, pool);
  auto chosen = greedy_indices(inst);
  return make_witness(target, base, inst, chosen, CoverMethod::greedy, false,
                      {chosen.size(), seconds_since(t0), false});
}

CoverWitness cover_exact(const FiniteSet& target, const FiniteSet& base,
                         const FiniteSet& pool, const Limits& limits) {
  auto t0 = Clock::now();
  if (target.empty()) return CoverWitness{target, base, {}, true, CoverMethod::exact, {}};
  if (base.empty())
    throw Error(ErrorKind::uncoverable, "cannot cover a nonempty target with an empty base");
  auto inst = build_instance(target, base, pool);
  BranchAndBound bb(inst, limits.node_limit);
  bb.solve(greedy_indices(inst));
  return make_witness(target, base, inst, bb.best(), CoverMethod::exact,
                      !bb.aborted(),
                      {bb.nodes(), seconds_since(t0), bb.aborted()});
}

CoverWitness cover_by_translates(const FiniteSet& target, const FiniteSet& base,
                                 bool exact, const Limits& limits) {
  if (target.empty())
    return CoverWitness{target, base, {}, exact,
                        exact ? CoverMethod::exact : CoverMethod::greedy, {}};
  FiniteSet pool = difference_set(target, base, limits);
  return exact ? cover_exact(target, base, pool, limits)
               : cover_greedy(target, base, pool, limits);
}

// ---------------------------------------------------------------------------

Element Derivation::evaluate(const Ring& r) const {
  switch (kind) {
    case Kind::member: return a;
    case Kind::product: return r.sub(r.mul(a, b), c);
    case Kind::sum: return r.sub(r.add(a, b), c);
  }
  return a;
}

FiniteSet approximation_target(const FiniteSet& x, ApproxMode mode,
                               const Limits& limits) {
  FiniteSet sums = sumset(x, x, limits);
  if (mode == ApproxMode::group) return sums;
  return set_union(prodset(x, x, limits), sums);
}

namespace {

// First factorisation (in canonical pair order) of every product and sum.
struct Decompositions {
  std::unordered_map<Element, std::pair<Element, Element>, ElementHash> products, sums;

  explicit Decompositions(const FiniteSet& x) {
    const Ring& r = *x.ring();
    for (Element a : x)
      for (Element b : x) {
        products.try_emplace(r.mul(a, b), a, b);
        sums.try_emplace(r.add(a, b), a, b);
      }
  }
};

std::optional<Derivation> derive(const FiniteSet& x, const Decompositions& d,
                                 Element f) {
  const Ring& r = *x.ring();
  if (x.contains(f)) return Derivation{Derivation::Kind::member, f, f, f};
  for (Element c : x) {
    Element t = r.add(f, c);
    if (auto it = d.products.find(t); it != d.products.end())
      return Derivation{Derivation::Kind::product, it->second.first,
                        it->second.second, c};
    if (auto it = d.sums.find(t); it != d.sums.end())
      return Derivation{Derivation::Kind::sum, it->second.first,
                        it->second.second, c};
  }
  return std::nullopt;
}

std::optional<std::size_t> growth_level(const FiniteSet& x, const FiniteSet& f,
                                        const Limits& limits) {
  try {
    FiniteSet level = x;
    for (std::size_t n = 0; n <= 3; ++n) {
      if (n > 0) level = growth_step(level, limits);
      if (f.is_subset_of(level)) return n;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::budget_exceeded) throw;
  }
  return std::nullopt;
}

void require_symmetric(const FiniteSet& x) {
  if (x.empty())
    throw Error(ErrorKind::precondition, "approximation constant of the empty set");
  const Ring& r = *x.ring();
  for (Element e : x)
    if (!x.contains(r.neg(e)))
      throw Error(ErrorKind::not_symmetric,
                  "set is not additively symmetric: " + r.render(e) +
                      " is present but " + r.render(r.neg(e)) + " is not");
}

}  // namespace

ApproxCertificate certificate_for(const FiniteSet& x, const FiniteSet& f,
                                  ApproxMode mode, const Limits& limits) {
  require_symmetric(x);
  require_same_ring(x, f);
  ApproxCertificate cert{x, f.size(), f, mode, false, {}, {}, std::nullopt};
  Decompositions d(x);
  for (Element e : f) {
    auto der = derive(x, d, e);
    if (!der)
      throw Error(ErrorKind::verification_failed,
                  "translate " + x.ring()->render(e) +
                      " has no derivation as a, a*b - c or a + b - c over X");
    cert.derivations.push_back(*der);
  }
  auto check = verify_certificate(cert, limits);
  if (!check.ok) throw Error(ErrorKind::verification_failed, check.reason);
  cert.f_growth_level = growth_level(x, f, limits);
  return cert;
}

ApproxCertificate approx_constant(const FiniteSet& x, ApproxMode mode, bool exact,
                                  const Limits& limits) {
  require_symmetric(x);
  FiniteSet target = approximation_target(x, mode, limits);
  CoverWitness w = cover_by_translates(target, x, exact, limits);
  FiniteSet f(x.ring(), w.translates, limits);
  ApproxCertificate cert = certificate_for(x, f, mode, limits);
  cert.minimal = exact && w.optimal;
  cert.stats = w.stats;
  return cert;
}

CertificateCheck verify_certificate(const ApproxCertificate& cert,
                                    const Limits& limits) {
  const Ring& r = *cert.x.ring();
  if (!same_ring(cert.x.ring(), cert.f.ring())) return {false, "X and F live in different rings"};
  if (!is_symmetric(cert.x)) return {false, "X is not additively symmetric"};
  if (cert.f.size() != cert.k)
    return {false, "|F| = " + std::to_string(cert.f.size()) + " but k = " +
                       std::to_string(cert.k)};
  if (cert.derivations.size() != cert.f.size())
    return {false, "derivation count does not match |F|"};
  for (std::size_t i = 0; i < cert.f.size(); ++i) {
    const auto& d = cert.derivations[i];
    bool letters_ok = cert.x.contains(d.a) &&
                      (d.kind == Derivation::Kind::member ||
                       (cert.x.contains(d.b) && cert.x.contains(d.c)));
    if (!letters_ok || d.evaluate(r) != cert.f.elements()[i])
      return {false, "derivation of " + r.render(cert.f.elements()[i]) + " is invalid"};
  }
  FiniteSet target = approximation_target(cert.x, cert.mode, limits);
  CoverWitness w{target, cert.x, {cert.f.begin(), cert.f.end()}, false,
                 CoverMethod::exact, {}};
  auto check = verify_witness(w);
  if (!check.ok)
    return {false, "target element " + r.render(*check.uncovered) + " is not in F + X"};
  if (r.is_finite() && *r.cardinality() <= limits.closure_budget) {
    auto gen = closure(cert.x, limits.closure_budget, limits);
    if (gen.complete && !cert.f.is_subset_of(gen.generated))
      return {false, "F is not contained in the ring generated by X"};
  }
  return {true, {}};
}

std::optional<std::size_t> CommensurabilityResult::constant() const {
  if (!k_ab || !k_ba) return std::nullopt;
  return std::max(*k_ab, *k_ba);
}

CommensurabilityResult commensurability(const FiniteSet& a, const FiniteSet& b,
                                        bool exact, const Limits& limits) {
  require_same_ring(a, b);
  if (a.empty() || b.empty())
    throw Error(ErrorKind::precondition, "commensurability needs nonempty sets");
  CommensurabilityResult out{a, b, std::nullopt, std::nullopt, std::nullopt,
                             std::nullopt, exact};
  auto one_way = [&](const FiniteSet& t, const FiniteSet& s,
                     std::optional<std::size_t>& k,
                     std::optional<CoverWitness>& w) {
    try {
      w = cover_by_translates(t, s, exact, limits);
      k = w->size();
      out.optimal = out.optimal && w->optimal;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::uncoverable) throw;
      out.optimal = false;
    }
  };
  one_way(a, b, out.k_ab, out.ab);
  one_way(b, a, out.k_ba, out.ba);
  return out;
}

GenericityResult is_generic(const FiniteSet& d, const FiniteSet& x,
                            std::size_t bound, const Limits& limits) {
  require_same_ring(d, x);
  GenericityResult out;
  if (x.empty()) {
    out.generic = true;
    out.witness = CoverWitness{x, d, {}, true, CoverMethod::exact, {}};
    return out;
  }
  if (d.empty()) return out;
  try {
    out.witness = cover_by_translates(x, d, /*exact=*/true, limits);
    out.generic = out.witness->size() <= bound;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::uncoverable) throw;
  }
  return out;
}

}  // namespace apx
