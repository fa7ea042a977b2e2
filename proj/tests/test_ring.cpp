#include <fstream>
#include <random>

#include "apx/finite_set.hpp"
#include "apx/ring.hpp"
#include "helpers.hpp"

using namespace apx;
using testing::error_kind;

namespace {

const std::string data_dir = APX_TEST_DATA;

Element el(const RingHandle& r, const std::string& s) { return r->parse_element(s); }

// Ring axioms over all triples, or over `samples` random triples.
void check_axioms(const RingHandle& r, std::size_t samples = 0) {
  const Ring& R = *r;
  auto all = enumerate(R);
  std::mt19937_64 rng(7);
  auto check = [&](Element a, Element b, Element c) {
    CHECK(R.add(a, b) == R.add(b, a));
    CHECK(R.add(R.add(a, b), c) == R.add(a, R.add(b, c)));
    CHECK(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
    CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
    CHECK(R.mul(R.add(a, b), c) == R.add(R.mul(a, c), R.mul(b, c)));
    CHECK(R.add(a, R.neg(a)) == R.zero());
  };
  if (samples == 0) {
    for (Element a : all)
      for (Element b : all)
        for (Element c : all) check(a, b, c);
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (std::size_t i = 0; i < samples; ++i)
      check(all[pick(rng)], all[pick(rng)], all[pick(rng)]);
  }
}

}  // namespace

TEST_CASE("make_ring examples") {
  auto z7 = parse_ring("zmod:7");
  CHECK(z7->cardinality() == 7u);
  CHECK(z7->characteristic() == 7u);

  auto gf9 = parse_ring("gf:3^2:t^2+1");
  CHECK(gf9->cardinality() == 9u);
  CHECK(gf9->characteristic() == 3u);

  CHECK(error_kind([] { parse_ring("table:@" + data_dir + "/bad_assoc.table"); }) ==
        ErrorKind::invalid_descriptor);
  CHECK(error_kind([] { parse_ring("zmod:1"); }) == ErrorKind::invalid_descriptor);
  CHECK(error_kind([] { parse_ring("gf:3^2:t^2+2"); }) == ErrorKind::invalid_descriptor);
  CHECK(error_kind([] { parse_ring("polyquo:4:t^2"); }) == ErrorKind::invalid_descriptor);
  CHECK(error_kind([] { parse_ring("polyquo:5:2t^2"); }) == ErrorKind::invalid_descriptor);
}

TEST_CASE("invalid table names the violated axiom") {
  try {
    parse_ring("table:@" + data_dir + "/bad_assoc.table");
    FAIL("accepted a non-associative table");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("associativ") != std::string::npos);
  }
}

TEST_CASE("ring_ops examples") {
  auto z7 = parse_ring("zmod:7");
  auto ops = ring_ops(z7);
  CHECK(ops.add(el(z7, "3"), el(z7, "5")) == el(z7, "1"));
  auto gf9 = parse_ring("gf:3^2:t^2+1");
  auto t = el(gf9, "t");
  CHECK(gf9->mul(t, t) == el(gf9, "2"));
  CHECK(gf9->mul(t, t) == gf9->neg(el(gf9, "1")));
  for (auto dsl : {"zmod:12", "int", "poly:3", "mat:2:zmod:3"}) {
    auto r = parse_ring(dsl);
    for (Element x : r->small_elements(20)) CHECK(r->add(x, r->neg(x)) == r->zero());
  }
}

TEST_CASE("cross-ring operands are rejected") {
  auto z7 = parse_ring("zmod:7");
  auto ops = ring_ops(z7);
  CHECK(error_kind([&] { ops.add(Element{3}, Element{9}); }) == ErrorKind::cross_ring);
  auto z5 = parse_ring("zmod:5");
  FiniteSet a(z7, {Element{1}}), b(z5, {Element{1}});
  CHECK(error_kind([&] { set_union(a, b); }) == ErrorKind::cross_ring);
}

TEST_CASE("enumerate examples") {
  auto z3 = parse_ring("zmod:3");
  CHECK(enumerate(*z3) == std::vector<Element>{Element{0}, Element{1}, Element{2}});
  auto p = parse_ring("prod:(zmod:2,zmod:2)");
  auto all = enumerate(*p);
  CHECK(all.size() == 4);
  CHECK(p->render(all[0]) == "(0,0)");
  CHECK(error_kind([] { enumerate(*parse_ring("int")); }) == ErrorKind::infinite_ring);
  CHECK(error_kind([] { enumerate(*parse_ring("poly:2")); }) == ErrorKind::infinite_ring);
}

TEST_CASE("parse_element examples") {
  auto z7 = parse_ring("zmod:7");
  CHECK(el(z7, "12") == el(z7, "5"));
  auto pq = parse_ring("polyquo:5:t^3");
  CHECK(pq->render(el(pq, "2+t")) == "t+2");
  auto lp = parse_ring("poly:3");
  Element f = el(lp, "t^2+2t");
  CHECK(lp->render(f) == "t^2+2t");
  CHECK(lp->mul(el(lp, "t"), el(lp, "t+2")) == f);
  try {
    el(z7, "1x");
    FAIL("accepted a malformed literal");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 1);
  }
  auto tr = parse_ring("table:@" + data_dir + "/zero_mul_z4.table");
  CHECK(error_kind([&] { el(tr, "4"); }) == ErrorKind::syntax);
}

TEST_CASE("axioms hold exhaustively on small backends") {
  for (auto dsl : {"zmod:12", "gf:3^2:t^2+1", "gf:2^3:t^3+t+1", "polyquo:5:t^3",
                   "polyquo:2:t^3+t", "mat:2:zmod:2", "prod:(zmod:2,zmod:3)",
                   "prod:(gf:2^2:t^2+t+1,zmod:4)"}) {
    CAPTURE(dsl);
    auto r = parse_ring(dsl);
    if (*r->cardinality() <= 64) check_axioms(r);
    else check_axioms(r, 10'000);
  }
  check_axioms(parse_ring("table:@" + data_dir + "/zero_mul_z4.table"));
}

TEST_CASE("axioms on sampled triples of larger backends") {
  for (auto dsl : {"mat:2:zmod:5", "gf:2^10:t^10+t^3+1", "mat:3:zmod:2", "zmod:1000003"}) {
    CAPTURE(dsl);
    check_axioms(parse_ring(dsl), 10'000);
  }
}

TEST_CASE("lazy backends satisfy the axioms on a window") {
  for (auto dsl : {"int", "poly:2", "poly:5"}) {
    auto r = parse_ring(dsl);
    auto w = r->small_elements(12);
    for (Element a : w)
      for (Element b : w)
        for (Element c : w) {
          CHECK(r->mul(r->mul(a, b), c) == r->mul(a, r->mul(b, c)));
          CHECK(r->mul(a, r->add(b, c)) == r->add(r->mul(a, b), r->mul(a, c)));
          CHECK(r->add(a, b) == r->add(b, a));
        }
  }
}

TEST_CASE("matrix rings are not commutative") {
  auto m = parse_ring("mat:2:zmod:2");
  Element a = el(m, "[[1,1],[0,1]]"), b = el(m, "[[1,0],[1,1]]");
  CHECK(m->mul(a, b) != m->mul(b, a));
}

TEST_CASE("characteristic is minimal") {
  struct Case {
    const char* dsl;
    std::uint64_t l;
  };
  for (auto c : {Case{"zmod:12", 12}, Case{"gf:3^2:t^2+1", 3}, Case{"polyquo:5:t^3", 5},
                 Case{"mat:2:zmod:4", 4}, Case{"prod:(zmod:2,zmod:3)", 6},
                 Case{"prod:(zmod:4,zmod:6)", 12}, Case{"int", 0}, Case{"poly:3", 3}}) {
    CAPTURE(c.dsl);
    auto r = parse_ring(c.dsl);
    CHECK(r->characteristic() == c.l);
    if (r->is_finite()) CHECK(characteristic_by_enumeration(*r) == c.l);
  }
  auto tr = parse_ring("table:@" + data_dir + "/zero_mul_z4.table");
  CHECK(tr->characteristic() == 4);
}

TEST_CASE("cardinality matches enumeration") {
  for (auto dsl : {"zmod:9", "gf:5^2:t^2+2", "polyquo:3:t^2+1", "mat:2:zmod:3",
                   "prod:(zmod:2,mat:2:zmod:2)"}) {
    auto r = parse_ring(dsl);
    auto all = enumerate(*r);
    CHECK(all.size() == *r->cardinality());
    CHECK(all.front() == r->zero());
  }
}

TEST_CASE("parse and render round-trip on random elements") {
  std::mt19937_64 rng(11);
  for (auto dsl : {"zmod:97", "gf:3^4:t^4+t+2", "polyquo:7:t^3+2", "mat:2:zmod:6",
                   "prod:(zmod:5,gf:2^2:t^2+t+1)", "int", "poly:5"}) {
    CAPTURE(dsl);
    auto r = parse_ring(dsl);
    for (int i = 0; i < 1000; ++i) {
      Element x;
      if (r->is_finite()) {
        x = Element{static_cast<std::int64_t>(rng() % *r->cardinality())};
      } else if (std::string(dsl) == "int") {
        x = Element{static_cast<std::int64_t>(rng() % 2'000'001) - 1'000'000};
      } else {
        x = Element{static_cast<std::int64_t>(rng() % 100'000)};
      }
      CHECK(r->parse_element(r->render(x)) == x);
    }
  }
  auto tr = parse_ring("table:@" + data_dir + "/zero_mul_z4.table");
  for (Element x : enumerate(*tr)) CHECK(tr->parse_element(tr->render(x)) == x);
}

TEST_CASE("ring DSL round-trips") {
  for (auto dsl : {"zmod:7", "gf:3^2:t^2+1", "polyquo:5:t^3", "mat:2:zmod:3",
                   "prod:(zmod:2,gf:2^2:t^2+t+1)", "int", "poly:3"}) {
    CHECK(parse_ring(dsl)->dsl() == dsl);
  }
}

TEST_CASE("quotient_ring examples") {
  auto z9 = parse_ring("zmod:9");
  auto q = quotient_ring(z9, FiniteSet(z9, {Element{0}, Element{3}, Element{6}}));
  CHECK(q.ring->cardinality() == 3u);
  CHECK(q.ring->characteristic() == 3u);
  // Z/9 over 3Z/9 is Z/3: 1 generates and 1*1 = 1.
  Element one = q.project(Element{1});
  CHECK(q.ring->mul(one, one) == one);
  CHECK(q.ring->add(q.ring->add(one, one), one) == q.ring->zero());

  auto m = parse_ring("mat:2:zmod:2");
  auto id = quotient_ring(m, FiniteSet(m, {m->zero()}));
  CHECK(id.ring->cardinality() == m->cardinality());
  for (Element x : enumerate(*m))
    for (Element y : enumerate(*m))
      CHECK(id.project(m->mul(x, y)) == id.ring->mul(id.project(x), id.project(y)));

  auto z6 = parse_ring("zmod:6");
  try {
    quotient_ring(z6, FiniteSet(z6, {Element{0}, Element{2}}));
    FAIL("accepted a non-ideal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_an_ideal);
    CHECK(std::string(e.what()).find("(2, 2)") != std::string::npos);
  }
  CHECK(error_kind([] {
          auto z = parse_ring("int");
          quotient_ring(z, FiniteSet(z, {Element{0}}));
        }) == ErrorKind::infinite_ring);
}

TEST_CASE("quotient projection is a homomorphism") {
  auto r = parse_ring("polyquo:2:t^3");
  // (t) = {a t + b t^2}
  FiniteSet ideal = parse_set_literal(r, "{0, t, t^2, t^2+t}");
  auto q = quotient_ring(r, ideal);
  CHECK(q.ring->cardinality() == 2u);
  for (Element x : enumerate(*r))
    for (Element y : enumerate(*r)) {
      CHECK(q.project(r->add(x, y)) == q.ring->add(q.project(x), q.project(y)));
      CHECK(q.project(r->mul(x, y)) == q.ring->mul(q.project(x), q.project(y)));
    }
  // One-sided ideals of a matrix ring are rejected.
  auto m = parse_ring("mat:2:zmod:2");
  auto col = parse_set_literal(m, "{[[0,0],[0,0]], [[1,0],[0,0]], [[0,0],[1,0]], [[1,0],[1,0]]}");
  CHECK(error_kind([&] { quotient_ring(m, col); }) == ErrorKind::not_an_ideal);
}

TEST_CASE("restriction to a subring") {
  auto z8 = parse_ring("zmod:8");
  auto s = FiniteSet(z8, {Element{0}, Element{2}, Element{4}, Element{6}});
  auto res = restrict_to_subring(s);
  CHECK(res.ring->cardinality() == 4u);
  CHECK(res.lift(res.ring->mul(res.locate(Element{2}), res.locate(Element{6}))) == Element{4});
  CHECK(error_kind([&] { restrict_to_subring(FiniteSet(z8, {Element{0}, Element{1}})); }) ==
        ErrorKind::precondition);
}

TEST_CASE("zero multiplication table ring is non-unital") {
  auto tr = parse_ring("table:@" + data_dir + "/zero_mul_z4.table");
  for (Element e : enumerate(*tr))
    for (Element x : enumerate(*tr)) CHECK(tr->mul(e, x) == tr->zero());
}

TEST_CASE("integer overflow is a budget outcome") {
  auto z = parse_ring("int");
  Element big{std::int64_t{1} << 62};
  CHECK(error_kind([&] { z->mul(big, big); }) == ErrorKind::budget_exceeded);
}
