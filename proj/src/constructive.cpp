#include "apx/constructive.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <map>

#include "apx/error.hpp"
#include "apx/setalg.hpp"

namespace apx {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSat - b ? kSat : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSat / b ? kSat : a * b;
}

}  // namespace

std::uint64_t saturating_pow(std::uint64_t a, unsigned e) {
  std::uint64_t out = 1;
  while (e--) out = sat_mul(out, a);
  return out;
}

TermPtr term_zero(const Ring& r) {
  auto t = std::make_shared<Term>();
  t->value = r.zero();
  return t;
}

TermPtr term_letter(Element x) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::letter;
  t->letter = x;
  t->value = x;
  t->words = 1;
  t->letters = 1;
  return t;
}

TermPtr term_left_mul(const Ring& r, Element x, TermPtr inner) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::left_mul;
  t->letter = x;
  t->value = r.mul(x, inner->value);
  t->words = inner->words;
  t->letters = sat_add(inner->letters, inner->words);
  t->right = std::move(inner);
  return t;
}

TermPtr term_sum(const Ring& r, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::sum;
  t->value = r.add(a->value, b->value);
  t->words = sat_add(a->words, b->words);
  t->letters = sat_add(a->letters, b->letters);
  t->left = std::move(a);
  t->right = std::move(b);
  return t;
}

Element evaluate_word(const Ring& r, const Word& w) {
  if (w.empty()) throw Error(ErrorKind::precondition, "empty word");
  Element acc = w.front();
  for (std::size_t i = 1; i < w.size(); ++i) acc = r.mul(w[i], acc);
  return acc;
}

Element evaluate_term(const Ring& r, const Term& t) {
  switch (t.kind) {
    case Term::Kind::zero: return r.zero();
    case Term::Kind::letter: return t.letter;
    case Term::Kind::left_mul: return r.mul(t.letter, evaluate_term(r, *t.right));
    case Term::Kind::sum:
      return r.add(evaluate_term(r, *t.left), evaluate_term(r, *t.right));
  }
  return r.zero();
}

namespace {

void flatten_into(const Term& t, Word& suffix, std::vector<Word>& out,
                  std::size_t limit) {
  switch (t.kind) {
    case Term::Kind::zero: return;
    case Term::Kind::letter: {
      if (out.size() >= limit)
        throw Error(ErrorKind::budget_exceeded, "derivation expands to too many words");
      Word w{t.letter};
      w.insert(w.end(), suffix.rbegin(), suffix.rend());
      out.push_back(std::move(w));
      return;
    }
    case Term::Kind::left_mul:
      suffix.push_back(t.letter);
      flatten_into(*t.right, suffix, out, limit);
      suffix.pop_back();
      return;
    case Term::Kind::sum:
      flatten_into(*t.left, suffix, out, limit);
      flatten_into(*t.right, suffix, out, limit);
      return;
  }
}

}  // namespace

std::vector<Word> flatten(const Term& t, std::size_t limit) {
  if (t.words > limit)
    throw Error(ErrorKind::budget_exceeded, "derivation expands to too many words");
  std::vector<Word> out;
  Word suffix;  // outer letters, innermost last
  flatten_into(t, suffix, out, limit);
  return out;
}

std::string render_term(const Ring& r, const Term& t) {
  switch (t.kind) {
    case Term::Kind::zero: return "0";
    case Term::Kind::letter: return r.render(t.letter);
    case Term::Kind::left_mul:
      return "(" + r.render(t.letter) + ")*(" + render_term(r, *t.right) + ")";
    case Term::Kind::sum:
      return render_term(r, *t.left) + " + " + render_term(r, *t.right);
  }
  return "?";
}

namespace {

bool smaller(std::uint64_t w1, std::uint64_t l1, const Term& t) {
  return w1 < t.words || (w1 == t.words && l1 < t.letters);
}

}  // namespace

bool DerivedSet::insert(const TermPtr& t) {
  auto [it, fresh] = terms_.try_emplace(t->value, t);
  if (fresh) return true;
  if (smaller(t->words, t->letters, *it->second)) {
    it->second = t;
    return true;
  }
  return false;
}

std::vector<Element> DerivedSet::values() const {
  std::vector<Element> out;
  out.reserve(terms_.size());
  for (const auto& [v, t] : terms_) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

FiniteSet DerivedSet::to_set(const Limits& limits) const {
  return FiniteSet(ring_, values(), limits);
}

namespace {

void require_ring_certificate(const ApproxCertificate& cert, const Limits& limits) {
  if (cert.mode != ApproxMode::ring)
    throw Error(ErrorKind::precondition, "constructive covers need a ring-mode certificate");
  auto check = verify_certificate(cert, limits);
  if (!check.ok)
    throw Error(ErrorKind::verification_failed, "certificate rejected: " + check.reason);
}

void check_cap(const DerivedSet& s, const Limits& limits) {
  if (s.size() > limits.cardinality_cap)
    throw Error(ErrorKind::budget_exceeded,
                "constructive translate set exceeds " +
                    std::to_string(limits.cardinality_cap) + " elements");
}

// {a + b} keeping the cheapest derivation per value.
DerivedSet add_sets(const Ring& r, const DerivedSet& a, const DerivedSet& b,
                    const Limits& limits) {
  DerivedSet out(a.ring());
  const auto va = a.values();
  const auto vb = b.values();
  std::unordered_map<Element, std::pair<std::uint64_t, std::uint64_t>, ElementHash> best;
  for (Element x : va) {
    const TermPtr& tx = a.term(x);
    for (Element y : vb) {
      const TermPtr& ty = b.term(y);
      Element v = r.add(x, y);
      std::uint64_t w = sat_add(tx->words, ty->words);
      std::uint64_t l = sat_add(tx->letters, ty->letters);
      auto [it, fresh] = best.try_emplace(v, w, l);
      if (!fresh) {
        auto [bw, bl] = it->second;
        if (!(w < bw || (w == bw && l < bl))) continue;
        it->second = {w, l};
      }
      out.insert(term_sum(r, tx, ty));
    }
    check_cap(out, limits);
  }
  return out;
}

struct Context {
  Context(const ApproxCertificate& c, const Limits& l)
      : cert(c), r(*c.x.ring()), limits(l), f(c.x.ring()) {
    for (std::size_t i = 0; i < c.f.size(); ++i) {
      const Derivation& d = c.derivations[i];
      TermPtr t;
      switch (d.kind) {
        case Derivation::Kind::member:
          t = term_letter(d.a);
          break;
        case Derivation::Kind::product:
          t = term_sum(r, term_left_mul(r, d.a, term_letter(d.b)),
                       term_letter(r.neg(d.c)));
          break;
        case Derivation::Kind::sum:
          t = term_sum(r, term_sum(r, term_letter(d.a), term_letter(d.b)),
                       term_letter(r.neg(d.c)));
          break;
      }
      if (t->value != c.f.elements()[i])
        throw Error(ErrorKind::verification_failed,
                    "derivation of " + r.render(c.f.elements()[i]) + " evaluates to " +
                        r.render(t->value));
      f.insert(t);
    }
  }

  const DerivedSet& word_cover(const Word& w) {
    if (w.empty()) throw Error(ErrorKind::precondition, "claim-1 word is empty");
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    for (Element x : w)
      if (!cert.x.contains(x))
        throw Error(ErrorKind::precondition, "word letter " + r.render(x) + " is not in X");
    DerivedSet out(cert.x.ring());
    if (w.size() == 1) {
      out = f;
    } else {
      const Element outer = w.back();
      const DerivedSet& inner = word_cover(Word(w.begin(), w.end() - 1));
      DerivedSet scaled(cert.x.ring());
      for (Element g : inner.values())
        scaled.insert(term_left_mul(r, outer, inner.term(g)));
      out = add_sets(r, scaled, f, limits);
    }
    return memo.emplace(w, std::move(out)).first->second;
  }

  DerivedSet sum_cover(const std::vector<Word>& words) {
    if (words.empty()) {
      if (cert.x.contains(r.zero())) {
        DerivedSet z(cert.x.ring());
        z.insert(term_zero(r));
        return z;
      }
      return f;
    }
    DerivedSet g = word_cover(words[0]);
    for (std::size_t i = 1; i < words.size(); ++i)
      g = add_sets(r, add_sets(r, word_cover(words[i]), g, limits), f, limits);
    return g;
  }

  const ApproxCertificate& cert;
  const Ring& r;
  Limits limits;
  DerivedSet f;
  std::map<Word, DerivedSet> memo;
};

void check_derivations(const Ring& r, const DerivedSet& s) {
  for (Element v : s.values()) {
    const Term& t = *s.term(v);
    Element direct = evaluate_term(r, t);
    Element expanded = r.zero();
    for (const Word& w : flatten(t)) expanded = r.add(expanded, evaluate_word(r, w));
    if (direct != v || expanded != v)
      throw Error(ErrorKind::verification_failed,
                  "translate " + r.render(v) + " does not match its derivation " +
                      render_term(r, t));
  }
}

Claim1Result finish_claim1(const ApproxCertificate& cert, Element value,
                           DerivedSet translates) {
  const Ring& r = *cert.x.ring();
  check_derivations(r, translates);
  CoverWitness w{left_multiply(value, cert.x), cert.x, translates.values(), false,
                 CoverMethod::constructive, {}};
  require_verified(w, "claim-1 cover of " + r.render(value) + "*X");
  return {std::move(w), std::move(translates)};
}

}  // namespace

Claim1Result claim1_cover(const Word& word, const ApproxCertificate& cert,
                          const Limits& limits) {
  require_ring_certificate(cert, limits);
  Context ctx(cert, limits);
  DerivedSet g = ctx.word_cover(word);
  return finish_claim1(cert, evaluate_word(*cert.x.ring(), word), std::move(g));
}

Claim1Result claim1_sum_cover(const std::vector<Word>& words,
                              const ApproxCertificate& cert, const Limits& limits) {
  require_ring_certificate(cert, limits);
  const Ring& r = *cert.x.ring();
  Context ctx(cert, limits);
  DerivedSet g = ctx.sum_cover(words);
  Element value = r.zero();
  for (const Word& w : words) value = r.add(value, evaluate_word(r, w));
  return finish_claim1(cert, value, std::move(g));
}

namespace {

Claim2Result claim2_with(Context& ctx, std::size_t m, const ConstructiveOptions& opts) {
  if (m < 1) throw Error(ErrorKind::precondition, "claim-2 cover needs m >= 1");
  const ApproxCertificate& cert = ctx.cert;
  const Ring& r = ctx.r;
  const Limits& limits = opts.limits;
  const std::uint64_t k2 = sat_mul(cert.k, cert.k);
  Claim2Result out;

  DerivedSet fm(cert.x.ring());
  fm.insert(term_zero(r));
  FiniteSet xm = cert.x;
  for (std::size_t level = 1; level <= m; ++level) {
    std::uint64_t bound = 1;
    if (level > 1) {
      DerivedSet g(cert.x.ring());
      std::uint64_t fx_total = 0;
      for (Element v : fm.values()) {
        DerivedSet fx = ctx.sum_cover(flatten(*fm.term(v)));
        fx_total = sat_add(fx_total, fx.size());
        for (Element y : fx.values()) g.insert(fx.term(y));
        check_cap(g, limits);
      }
      fm = add_sets(r, add_sets(r, g, ctx.f, limits), ctx.f, limits);
      bound = sat_mul(fx_total, k2);
      xm = prodset(xm, cert.x, limits);
    }
    const std::size_t full_size = fm.size();
    check_derivations(r, fm);
    if (opts.pruned && fm.size() > 1) {
      CoverWitness sub = cover_greedy(xm, cert.x, fm.to_set(limits), limits);
      DerivedSet kept(cert.x.ring());
      for (Element v : sub.translates) kept.insert(fm.term(v));
      fm = std::move(kept);
    }
    CoverWitness w{xm, cert.x, fm.values(), false, CoverMethod::constructive, {}};
    require_verified(w, "claim-2 cover of X^" + std::to_string(level));
    out.levels.push_back({level, fm, full_size, std::move(w), bound});
  }
  return out;
}

}  // namespace

Claim2Result claim2_cover(std::size_t m, const ApproxCertificate& cert,
                          const ConstructiveOptions& opts) {
  require_ring_certificate(cert, opts.limits);
  Context ctx(cert, opts.limits);
  return claim2_with(ctx, m, opts);
}

CoverWitness msum_cover(std::size_t m, const ApproxCertificate& cert,
                        const ConstructiveOptions& opts) {
  const Limits& limits = opts.limits;
  Claim2Result c2 = claim2_cover(m, cert, opts);
  FiniteSet f_prime(cert.x.ring(), limits);
  for (const auto& level : c2.levels) f_prime = set_union(f_prime, level.f_m.to_set(limits));
  FiniteSet translates = iterated_sum(f_prime, m, limits);
  if (m > 1) translates = sumset(translates, iterated_sum(cert.f, m - 1, limits), limits);
  CoverWitness w{msum(cert.x, m, limits), cert.x,
                 {translates.begin(), translates.end()}, false,
                 CoverMethod::constructive, {}};
  require_verified(w, "cover of " + std::to_string(m) + "(X^{<=" + std::to_string(m) + "})");
  return w;
}

CoverWitness k11_cover(const ApproxCertificate& cert, const Limits& limits) {
  require_ring_certificate(cert, limits);
  FiniteSet s11 = iterated_sum(cert.f, 11, limits);
  const std::uint64_t bound = saturating_pow(cert.k, 11);
  if (s11.size() > bound)
    throw Error(ErrorKind::verification_failed,
                "|S_11| = " + std::to_string(s11.size()) + " exceeds K^11");
  FiniteSet four = iterated_sum(cert.x, 4, limits);
  FiniteSet core = sumset(four, prodset(cert.x, four, limits), limits);
  CoverWitness w{core, cert.x, {s11.begin(), s11.end()}, false,
                 CoverMethod::constructive, {}};
  require_verified(w, "K^11 cover of 4X + X*4X");
  return w;
}

std::optional<double> ConstructiveCoverReport::ratio() const {
  if (!exact_size || *exact_size == 0) return std::nullopt;
  return static_cast<double>(constructed_size) / static_cast<double>(*exact_size);
}

std::vector<ConstructiveCoverReport> bound_table(const ApproxCertificate& cert,
                                                 std::size_t m_max,
                                                 const ConstructiveOptions& opts) {
  Claim2Result c2 = claim2_cover(m_max, cert, opts);
  std::vector<ConstructiveCoverReport> rows;
  for (auto& level : c2.levels) {
    ConstructiveCoverReport row{cert, level.m, level.witness, level.full_size,
                                std::nullopt, std::nullopt, false,
                                level.bound_formula_value};
    if (opts.pruned) row.pruned_size = level.witness.size();
    rows.push_back(std::move(row));
  }

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    if (row.constructed.target.size() > opts.exact_target_limit) continue;
    try {
      auto w = cover_by_translates(row.constructed.target, cert.x, true, opts.limits);
      row.exact_size = w.size();
      row.exact_optimal = w.optimal;
    } catch (...) {
#pragma omp critical(apx_bound_table)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace apx
