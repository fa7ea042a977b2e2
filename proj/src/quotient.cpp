#include <algorithm>

#include "apx/error.hpp"
#include "apx/finite_set.hpp"
#include "apx/ring.hpp"
#include "ring_internal.hpp"

namespace apx {

namespace {

[[noreturn]] void not_ideal(const Ring& r, const std::string& what, Element a,
                            Element b) {
  throw Error(ErrorKind::not_an_ideal, what + ", violating pair (" + r.render(a) +
                                           ", " + r.render(b) + ")");
}

void require_ideal(const Ring& r, const std::vector<Element>& all,
                   const FiniteSet& ideal) {
  if (!ideal.contains(r.zero()))
    throw Error(ErrorKind::not_an_ideal, "set does not contain zero");
  for (Element a : ideal)
    for (Element b : ideal)
      if (!ideal.contains(r.add(a, b)))
        not_ideal(r, "not closed under addition: " + r.render(r.add(a, b)) +
                         " is missing", a, b);
  for (Element a : ideal)
    if (!ideal.contains(r.neg(a)))
      not_ideal(r, "not closed under negation", a, a);
  for (Element x : all)
    for (Element a : ideal) {
      if (!ideal.contains(r.mul(x, a)))
        not_ideal(r, "not a left ideal: " + r.render(r.mul(x, a)) + " is missing", x, a);
      if (!ideal.contains(r.mul(a, x)))
        not_ideal(r, "not a right ideal: " + r.render(r.mul(a, x)) + " is missing", a, x);
    }
}

}  // namespace

Quotient quotient_ring(const RingHandle& ring, const FiniteSet& ideal) {
  const Ring& r = *ring;
  if (!r.is_finite())
    throw Error(ErrorKind::infinite_ring, "quotient of the infinite ring " + r.dsl());
  if (!same_ring(ring, ideal.ring()))
    throw Error(ErrorKind::cross_ring, "ideal does not belong to " + r.dsl());
  const std::vector<Element> all = enumerate(r, 4096);
  require_ideal(r, all, ideal);

  const std::size_t n = all.size();
  constexpr std::int64_t unassigned = -1;
  Quotient q;
  q.projection.assign(n, Element{unassigned});
  for (Element x : all) {
    if (q.projection[static_cast<std::size_t>(x.code)].code != unassigned) continue;
    Element c{static_cast<std::int64_t>(q.representatives.size())};
    q.representatives.push_back(x);
    for (Element i : ideal) q.projection[static_cast<std::size_t>(r.add(x, i).code)] = c;
  }

  const std::size_t m = q.representatives.size();
  TableDesc t;
  t.n = m;
  t.add.resize(m * m);
  t.mul.resize(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Element x = q.representatives[a], y = q.representatives[b];
      t.add[a * m + b] = static_cast<std::uint32_t>(q.project(r.add(x, y)).code);
      t.mul[a * m + b] = static_cast<std::uint32_t>(q.project(r.mul(x, y)).code);
    }
  q.ring = make_table_ring_unchecked(std::move(t));

  const Ring& qr = *q.ring;
  for (Element x : all)
    for (Element y : all) {
      if (q.project(r.add(x, y)) != qr.add(q.project(x), q.project(y)) ||
          q.project(r.mul(x, y)) != qr.mul(q.project(x), q.project(y)))
        throw Error(ErrorKind::verification_failed,
                    "projection is not a homomorphism at (" + r.render(x) + ", " +
                        r.render(y) + ")");
    }
  return q;
}

Element Restriction::locate(Element ambient) const {
  auto it = std::lower_bound(embedding.begin(), embedding.end(), ambient);
  if (it == embedding.end() || *it != ambient)
    throw Error(ErrorKind::cross_ring, "element is outside the subring");
  return Element{static_cast<std::int64_t>(it - embedding.begin())};
}

Restriction restrict_to_subring(const FiniteSet& subring) {
  const Ring& r = *subring.ring();
  if (subring.empty() || subring.size() > 4096)
    throw Error(ErrorKind::precondition,
                "subring restriction needs 1 to 4096 elements");
  Restriction out;
  out.embedding.assign(subring.begin(), subring.end());
  // Index 0 must be the zero element; canonical order puts code 0 first.
  if (out.embedding.front() != r.zero())
    throw Error(ErrorKind::precondition, "subset does not contain zero");
  const std::size_t m = out.embedding.size();
  TableDesc t;
  t.n = m;
  t.add.resize(m * m);
  t.mul.resize(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Element x = out.embedding[a], y = out.embedding[b];
      Element s = r.add(x, y), p = r.mul(x, y);
      if (!subring.contains(s) || !subring.contains(p))
        throw Error(ErrorKind::precondition,
                    "subset is not closed at (" + r.render(x) + ", " + r.render(y) + ")");
      t.add[a * m + b] = static_cast<std::uint32_t>(out.locate(s).code);
      t.mul[a * m + b] = static_cast<std::uint32_t>(out.locate(p).code);
    }
  out.ring = make_table_ring_unchecked(std::move(t));
  return out;
}

}  // namespace apx
