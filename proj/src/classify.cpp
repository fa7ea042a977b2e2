#include "apx/classify.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "apx/constructive.hpp"
#include "apx/error.hpp"
#include "apx/setalg.hpp"
#include "poly_mod.hpp"
#include "text.hpp"

namespace apx {

FiniteSet core_set(const FiniteSet& x, const Limits& limits) {
  FiniteSet four = iterated_sum(x, 4, limits);
  return sumset(four, prodset(x, four, limits), limits);
}

SubringCheck is_subring(const FiniteSet& s) {
  if (s.empty()) return {false, "empty", std::nullopt};
  const Ring& r = *s.ring();
  for (Element a : s)
    if (!s.contains(r.neg(a))) return {false, "neg", ElementPair{a, a}};
  for (Element a : s)
    for (Element b : s)
      if (!s.contains(r.add(a, b))) return {false, "add", ElementPair{a, b}};
  for (Element a : s)
    for (Element b : s)
      if (!s.contains(r.mul(a, b))) return {false, "mul", ElementPair{a, b}};
  return {};
}

ZeroDivisorCheck check_zero_divisors(const Ring& r, std::uint64_t seed) {
  ZeroDivisorCheck out;
  if (r.known_domain()) {
    out.known = true;
    return out;
  }
  if (!r.is_finite())
    throw Error(ErrorKind::precondition,
                "cannot check zero divisors of the infinite ring " + r.dsl());
  const std::uint64_t n = *r.cardinality();
  auto test = [&](Element a, Element b) {
    ++out.pairs_checked;
    if (a == r.zero() || b == r.zero()) return false;
    if (r.mul(a, b) == r.zero()) {
      out.domain = false;
      out.witness = ElementPair{a, b};
      return true;
    }
    return false;
  };
  if (n <= (std::uint64_t{1} << 12)) {
    for (std::uint64_t a = 1; a < n; ++a)
      for (std::uint64_t b = 1; b < n; ++b)
        if (test(Element{static_cast<std::int64_t>(a)}, Element{static_cast<std::int64_t>(b)}))
          return out;
    return out;
  }
  out.sampled = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, n - 1);
  for (int i = 0; i < 100'000; ++i)
    if (test(Element{static_cast<std::int64_t>(pick(rng))},
             Element{static_cast<std::int64_t>(pick(rng))}))
      return out;
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::small: return "small";
    case Verdict::structured: return "structured";
    case Verdict::counterexample_candidate: return "counterexample-candidate";
  }
  return "unknown";
}

const char* to_string(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::generated: return "generated";
    case SearchStrategy::seeded: return "seeded";
    case SearchStrategy::exhaustive: return "exhaustive";
  }
  return "unknown";
}

namespace {

std::string render_pair(const Ring& r, const ElementPair& p) {
  return "(" + r.render(p.first) + ", " + r.render(p.second) + ")";
}

std::optional<ElementPair> weak_zero_divisor(const FiniteSet& y, const Limits& limits) {
  const Ring& r = *y.ring();
  FiniteSet inner = set_union(prodset(y, y, limits), sumset(y, y, limits));
  FiniteSet w = sumset(inner, inner, limits);
  for (Element c : y) {
    if (c == r.zero()) continue;
    for (Element d : w) {
      if (d == r.zero()) continue;
      if (r.mul(c, d) == r.zero() || r.mul(d, c) == r.zero()) return ElementPair{c, d};
    }
  }
  return std::nullopt;
}

}  // namespace

ClassificationReport nzd_classify(const FiniteSet& x, const ClassifyOptions& opts) {
  const Ring& r = *x.ring();
  const Limits& limits = opts.limits;
  ZeroDivisorCheck hypothesis =
      opts.hypothesis ? *opts.hypothesis : check_zero_divisors(r, opts.seed);
  ApproxCertificate cert = approx_constant(x, ApproxMode::ring, opts.exact, limits);
  ClassificationReport rep{x, cert, cert.k, core_set(x, limits)};
  rep.hypothesis = hypothesis;

  if (!rep.hypothesis.domain) {
    if (!opts.weak_hypothesis)
      throw Error(ErrorKind::zero_divisor_found,
                  r.dsl() + " has zero divisors: " + render_pair(r, *rep.hypothesis.witness));
    rep.weak_hypothesis_used = true;
    rep.weak_violation = weak_zero_divisor(rep.core, limits);
    if (rep.weak_violation)
      throw Error(ErrorKind::zero_divisor_found,
                  "core has a zero divisor witnessed in 2(Y*Y + (Y+Y)): " +
                      render_pair(r, *rep.weak_violation));
  }

  rep.core_subring = is_subring(rep.core);
  rep.commensurability = commensurability(rep.core, x, opts.exact, limits);
  rep.commensurability_to_x = rep.commensurability->constant();
  rep.k11_bound = saturating_pow(rep.k, 11);
  rep.small_threshold = opts.small_threshold.value_or(4 * rep.k * rep.k);

  if (x.size() < rep.small_threshold) {
    rep.verdict = Verdict::small;
  } else if (rep.core_subring.ok && rep.commensurability_to_x &&
             *rep.commensurability_to_x <= rep.k11_bound) {
    rep.verdict = Verdict::structured;
  } else {
    rep.verdict = Verdict::counterexample_candidate;
  }
  return rep;
}

namespace {

std::optional<FiniteSet> closure_within(const FiniteSet& gens, const FiniteSet& core,
                                        const Limits& limits) {
  if (!gens.is_subset_of(core)) return std::nullopt;
  auto c = closure(gens, std::max<std::uint64_t>(core.size(), gens.size()), limits);
  if (!c.complete || !c.generated.is_subset_of(core)) return std::nullopt;
  return c.generated;
}

}  // namespace

SubringSearchResult pos_char_search(const FiniteSet& x, const SearchOptions& opts) {
  const Ring& r = *x.ring();
  const Limits& limits = opts.limits;
  if (!r.is_finite() || r.characteristic() == 0)
    throw Error(ErrorKind::precondition,
                "subring search needs a finite ring of positive characteristic");
  if (x.empty()) throw Error(ErrorKind::precondition, "subring search of the empty set");
  if (!is_symmetric(x))
    throw Error(ErrorKind::not_symmetric, "subring search needs a symmetric set");

  SubringSearchResult out{core_set(x, limits)};
  const FiniteSet& core = out.core;

  std::vector<std::pair<SearchStrategy, FiniteSet>> candidates;
  std::set<std::vector<Element>> seen;
  auto offer = [&](SearchStrategy s, std::optional<FiniteSet> c) {
    if (!c) return;
    std::vector<Element> key(c->begin(), c->end());
    if (seen.insert(key).second) candidates.emplace_back(s, std::move(*c));
  };

  auto wants = [&](SearchStrategy s) {
    return std::find(opts.strategies.begin(), opts.strategies.end(), s) !=
           opts.strategies.end();
  };

  if (wants(SearchStrategy::generated))
    offer(SearchStrategy::generated, closure_within(x, core, limits));

  if (wants(SearchStrategy::seeded)) {
    FiniteSet kx = x;
    for (int k = 1; k <= 4; ++k) {
      if (k > 1) kx = sumset(kx, x, limits);
      offer(SearchStrategy::seeded,
            closure_within(set_intersection(x, set_intersection(kx, core)), core, limits));
    }
    for (Element d : core)
      offer(SearchStrategy::seeded,
            closure_within(FiniteSet(x.ring(), {d}, limits), core, limits));
  }

  if (wants(SearchStrategy::exhaustive) && core.size() <= opts.exhaustive_limit) {
    out.exhaustive = true;
    FiniteSet zero(x.ring(), {r.zero()}, limits);
    std::vector<FiniteSet> queue{zero};
    std::set<std::vector<Element>> reached{{r.zero()}};
    offer(SearchStrategy::exhaustive, zero);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const FiniteSet s = queue[i];
      for (Element d : core) {
        if (s.contains(d)) continue;
        auto next = closure_within(set_union(s, FiniteSet(x.ring(), {d}, limits)), core, limits);
        if (!next) continue;
        std::vector<Element> key(next->begin(), next->end());
        if (!reached.insert(key).second) continue;
        queue.push_back(*next);
        offer(SearchStrategy::exhaustive, *next);
      }
    }
  }

  out.candidates = candidates.size();
  for (auto& [strategy, s] : candidates) {
    auto c = commensurability(s, x, opts.exact, limits);
    auto constant = c.constant();
    if (!constant) continue;
    if (!out.commensurability || *constant < *out.commensurability) {
      out.found = s;
      out.commensurability = constant;
      out.detail = std::move(c);
      out.strategy_used = strategy;
    }
  }
  if (out.found) {
    if (!is_subring(*out.found).ok)
      throw Error(ErrorKind::verification_failed, "search returned a non-subring");
    out.containment_ok = out.found->is_subset_of(core);
  }
  return out;
}

ModelReport finite_model_check(const FiniteSet& x, const FiniteSet& ideal,
                               const ModelOptions& opts) {
  const Ring& r = *x.ring();
  const Limits& limits = opts.limits;
  require_same_ring(x, ideal);
  if (!r.is_finite())
    throw Error(ErrorKind::infinite_ring, "finite model check needs a finite ring");
  if (x.empty()) throw Error(ErrorKind::precondition, "finite model check of the empty set");

  ModelReport rep{x, x, ideal, 0, 0, false, false, {}, x};
  auto gen = closure(x, *r.cardinality(), limits);
  rep.generated = gen.generated;
  if (!ideal.is_subset_of(rep.generated))
    throw Error(ErrorKind::not_an_ideal, "ideal is not contained in <X>");

  Restriction sub = restrict_to_subring(rep.generated);
  std::vector<Element> local;
  for (Element e : ideal) local.push_back(sub.locate(e));
  Quotient q = quotient_ring(sub.ring, FiniteSet(sub.ring, local, limits));
  rep.quotient_size = q.representatives.size();
  auto f = [&](Element ambient) { return q.project(sub.locate(ambient)); };

  std::optional<FiniteSet> xm;
  {
    FiniteSet level = x;
    for (std::size_t m = 0; m <= opts.depth_cap; ++m) {
      if (m > 0) level = growth_step(level, limits);
      if (ideal.is_subset_of(level)) {
        rep.m = m;
        xm = level;
        break;
      }
    }
  }
  if (!xm)
    throw Error(ErrorKind::precondition, "ideal is not contained in X_m for any m <= " +
                                             std::to_string(opts.depth_cap));

  auto preimage = [&](const std::vector<bool>& in_u) {
    std::vector<Element> out;
    for (Element e : rep.generated)
      if (in_u[static_cast<std::size_t>(f(e).code)]) out.push_back(e);
    return FiniteSet(x.ring(), std::move(out), limits);
  };

  // Clause (i).
  const std::size_t qn = rep.quotient_size;
  std::vector<bool> image(qn, false);
  for (Element e : *xm) image[static_cast<std::size_t>(f(e).code)] = true;
  FiniteSet pre = preimage(image);
  rep.u_is_image = pre.is_subset_of(*xm);
  if (!rep.u_is_image) {
    std::vector<bool> inside(qn, true);
    for (Element e : rep.generated)
      if (!xm->contains(e)) inside[static_cast<std::size_t>(f(e).code)] = false;
    image = inside;
    pre = preimage(image);
  }
  for (std::size_t c = 0; c < qn; ++c)
    if (image[c]) rep.u.push_back(Element{static_cast<std::int64_t>(c)});
  rep.preimage_u = pre;
  rep.clause_i = image[0] && pre.is_subset_of(*xm);

  // Clause (ii), at quotient level: translates of f^{-1}[U] cover x exactly
  // when translates of U cover f(x).
  std::vector<Element> fx_codes;
  for (Element e : x) fx_codes.push_back(f(e));
  FiniteSet fx(q.ring, fx_codes, limits);
  const std::size_t free_bits = qn - 1;
  rep.all_subsets = qn <= opts.exhaustive_quotient;
  const std::uint64_t total = rep.all_subsets ? (std::uint64_t{1} << free_bits) : opts.samples;
  std::mt19937_64 rng(opts.seed);
  rep.clause_ii = true;
  for (std::uint64_t s = 0; s < total; ++s) {
    std::vector<Element> u{Element{0}};
    for (std::size_t c = 1; c < qn; ++c) {
      bool take = rep.all_subsets ? ((s >> (c - 1)) & 1) : (s > 0 && (rng() & 1));
      if (take) u.push_back(Element{static_cast<std::int64_t>(c)});
    }
    FiniteSet uset(q.ring, u, limits);
    auto g = is_generic(uset, fx, fx.size(), limits);
    ++rep.subsets_tested;
    if (!g.generic) {
      rep.clause_ii = false;
      break;
    }
    rep.max_genericity = std::max(rep.max_genericity, g.witness->size());
    if (u.size() == 1) {
      std::vector<Element> lifted;
      for (Element t : g.witness->translates)
        lifted.push_back(sub.lift(q.representatives[static_cast<std::size_t>(t.code)]));
      CoverWitness w{x, ideal, lifted, g.witness->optimal, CoverMethod::exact,
                     g.witness->stats};
      std::sort(w.translates.begin(), w.translates.end());
      if (!verify_witness(w).ok) rep.clause_ii = false;
      rep.ideal_witness = std::move(w);
    }
  }

  // Clause (iii).
  rep.commensurability = commensurability(pre, x, true, limits);
  rep.clause_iii = rep.commensurability->constant().has_value();
  return rep;
}

std::vector<std::int64_t> least_irreducible_quadratic(std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::precondition, "p must be prime");
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b) {
      polymod::Poly poly{b, a, 1};
      if (polymod::is_irreducible(poly, p)) return poly;
    }
  throw Error(ErrorKind::precondition, "no irreducible quadratic found");
}

namespace {

std::string linear_text(std::int64_t c1, std::int64_t c0) {
  return std::to_string(c1) + "t+" + std::to_string(c0);
}

}  // namespace

GallerySet gallery_y_set(std::int64_t p) {
  auto q = least_irreducible_quadratic(p);
  RingHandle ring = parse_ring("gf:" + std::to_string(p) + "^2:" + text::render_polynomial(q));
  std::vector<Element> elems{ring->zero()};
  Element t = ring->parse_element("t");
  for (std::int64_t c = 0; c < p; ++c) {
    Element k = ring->parse_element(std::to_string(c));
    elems.push_back(ring->add(t, k));
    elems.push_back(ring->add(ring->neg(t), k));
  }
  GallerySet g{"y-set", FiniteSet(ring, elems), {}};
  g.properties["p"] = std::to_string(p);
  g.properties["size"] = std::to_string(2 * p + 1);
  g.properties["symmetric"] = "true";
  g.properties["expected"] = "ring-mode constant strictly increasing in p";
  return g;
}

GallerySet gallery_linear_polys(std::int64_t p, RingHandle ring) {
  if (!is_prime(p)) throw Error(ErrorKind::precondition, "p must be prime");
  if (!ring) ring = parse_ring("poly:" + std::to_string(p));
  std::vector<Element> elems;
  for (std::int64_t c1 = 0; c1 < p; ++c1)
    for (std::int64_t c0 = 0; c0 < p; ++c0)
      elems.push_back(ring->parse_element(linear_text(c1, c0)));
  GallerySet g{"linear-polys", FiniteSet(ring, elems), {}};
  g.properties["p"] = std::to_string(p);
  g.properties["ring"] = ring->dsl();
  g.properties["symmetric"] = "true";
  g.properties["expected"] = "additive subgroup; products reach degree 2";
  return g;
}

GallerySet gallery_interval(std::int64_t n, RingHandle ring) {
  if (n < 1) throw Error(ErrorKind::precondition, "interval needs N >= 1");
  if (!ring) ring = parse_ring("int");
  std::vector<Element> elems;
  for (std::int64_t i = -n; i <= n; ++i) elems.push_back(ring->parse_element(std::to_string(i)));
  GallerySet g{"interval", FiniteSet(ring, elems), {}};
  g.properties["N"] = std::to_string(n);
  g.properties["ring"] = ring->dsl();
  g.properties["symmetric"] = "true";
  g.properties["expected"] = "approximate subring";
  return g;
}

TransferCheck transfer_check(const FiniteSet& x, const FiniteSet& y, const Limits& limits) {
  require_same_ring(x, y);
  const Ring& r = *x.ring();
  if (!x.contains(r.zero())) throw Error(ErrorKind::precondition, "X must contain 0");
  TransferCheck out;
  auto c = commensurability(x, y, true, limits);
  if (!c.constant()) throw Error(ErrorKind::uncoverable, "X and Y are not commensurable");
  out.commensurability = *c.constant();
  auto cert = approx_constant(y, ApproxMode::ring, true, limits);
  out.k_y = cert.k;
  out.k_y_optimal = cert.minimal;

  FiniteSet translates(x.ring(), c.ba->translates, limits);
  FiniteSet level = x;
  for (std::size_t n = 0; n <= 6; ++n) {
    if (n > 0) level = growth_step(level, limits);
    if (translates.is_subset_of(level)) {
      out.n = n;
      out.contained = y.is_subset_of(growth_step(level, limits));
      break;
    }
  }
  return out;
}

}  // namespace apx
