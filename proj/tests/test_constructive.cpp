#include <random>

#include "apx/constructive.hpp"
#include "apx/setalg.hpp"
#include "helpers.hpp"

using namespace apx;
using testing::error_kind;
using testing::range;
using testing::set_of;

namespace {

ApproxCertificate unit_cert() {
  auto z = parse_ring("int");
  return approx_constant(range(z, -1, 1), ApproxMode::ring, true);
}

ApproxCertificate subring_cert() {
  auto z8 = parse_ring("zmod:8");
  return approx_constant(set_of(z8, "{0,2,4,6}"), ApproxMode::ring, true);
}

FiniteSet values_of(const DerivedSet& d) { return d.to_set(); }

Element sum_of_words(const Ring& r, const Term& t) {
  Element acc = r.zero();
  for (const auto& w : flatten(t)) acc = r.add(acc, evaluate_word(r, w));
  return acc;
}

std::vector<ApproxCertificate> random_certs(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const char* rings[] = {"zmod:12", "zmod:7", "polyquo:2:t^2", "mat:2:zmod:2", "zmod:25"};
  std::vector<ApproxCertificate> out;
  for (int i = 0; i < count; ++i) {
    auto r = parse_ring(rings[i % 5]);
    auto all = enumerate(*r);
    std::vector<Element> e;
    std::size_t n = 1 + rng() % 3;
    for (std::size_t j = 0; j < n; ++j) e.push_back(all[rng() % all.size()]);
    out.push_back(approx_constant(symmetrize(FiniteSet(r, e)), ApproxMode::ring, true));
  }
  return out;
}

}  // namespace

TEST_CASE("word evaluation order") {
  auto m = parse_ring("mat:2:zmod:2");
  auto all = enumerate(*m);
  auto a = all[3], b = all[6];
  CHECK(evaluate_word(*m, {a, b}) == m->mul(b, a));
  CHECK(evaluate_word(*m, {a}) == a);
}

TEST_CASE("terms keep cached values consistent") {
  auto z = parse_ring("int");
  auto t = term_sum(*z, term_left_mul(*z, Element{3}, term_letter(Element{2})), term_letter(Element{-1}));
  CHECK(t->value == Element{5});
  CHECK(evaluate_term(*z, *t) == Element{5});
  CHECK(t->words == 2);
  CHECK(t->letters == 3);
  auto words = flatten(*t);
  REQUIRE(words.size() == 2);
  CHECK(words[0] == Word{Element{2}, Element{3}});
  CHECK(sum_of_words(*z, *t) == Element{5});
  CHECK(flatten(*term_zero(*z)).empty());
}

TEST_CASE("flatten respects its word limit") {
  auto z = parse_ring("int");
  auto t = term_letter(Element{1});
  for (int i = 0; i < 6; ++i) t = term_sum(*z, t, t);
  CHECK(t->words == 64);
  CHECK(error_kind([&] { flatten(*t, 10); }) == ErrorKind::budget_exceeded);
}

TEST_CASE("DerivedSet keeps the shorter derivation") {
  auto z = parse_ring("int");
  DerivedSet d(z);
  auto long_form = term_sum(*z, term_letter(Element{1}), term_letter(Element{1}));
  CHECK(d.insert(long_form));
  CHECK(d.insert(term_letter(Element{2})));
  CHECK(d.size() == 1);
  CHECK(d.term(Element{2})->words == 1);
  CHECK_FALSE(d.insert(long_form));
}

TEST_CASE("claim1 examples") {
  auto c = unit_cert();
  auto z = c.x.ring();
  auto one = claim1_cover({Element{1}}, c);
  CHECK(values_of(one.translates) == set_of(z, "{-1,1}"));
  CHECK(verify_witness(one.witness).ok);
  auto two = claim1_cover({Element{1}, Element{1}}, c);
  CHECK(values_of(two.translates) == set_of(z, "{-2,0,2}"));
  CHECK(verify_witness(two.witness).ok);
  CHECK(error_kind([&] { claim1_cover({Element{5}}, c); }) == ErrorKind::precondition);

  auto s = subring_cert();
  auto w = claim1_cover({Element{2}, Element{6}, Element{4}}, s);
  CHECK(values_of(w.translates) == set_of(s.x.ring(), "{0}"));
}

TEST_CASE("claim1 sum covers") {
  auto c = unit_cert();
  auto z = c.x.ring();
  auto s = claim1_sum_cover({{Element{1}}, {Element{-1}, Element{1}}}, c);
  CHECK(verify_witness(s.witness).ok);
  CHECK(values_of(claim1_sum_cover({}, c).translates) == set_of(z, "{0}"));
}

TEST_CASE("claim2 examples") {
  auto c = unit_cert();
  auto z = c.x.ring();
  auto r = claim2_cover(3, c);
  REQUIRE(r.levels.size() == 3);
  CHECK(values_of(r.levels[0].f_m) == set_of(z, "{0}"));
  CHECK(r.levels[0].bound_formula_value == 1);
  CHECK(values_of(r.levels[1].f_m) == set_of(z, "{-2,0,2}"));
  for (const auto& l : r.levels) {
    CHECK(verify_witness(l.witness).ok);
    CHECK(l.witness.target == power_products(c.x, l.m).exact);
  }

  auto s = subring_cert();
  for (const auto& l : claim2_cover(4, s).levels)
    CHECK(values_of(l.f_m) == set_of(s.x.ring(), "{0}"));
  CHECK(error_kind([&] { claim2_cover(0, c); }) == ErrorKind::precondition);
}

TEST_CASE("claim2 rejects unverified certificates") {
  auto c = unit_cert();
  c.k = 1;
  CHECK(error_kind([&] { claim2_cover(2, c); }) == ErrorKind::verification_failed);
  auto g = approx_constant(c.x, ApproxMode::group, true);
  CHECK(error_kind([&] { claim2_cover(2, g); }) == ErrorKind::precondition);
}

TEST_CASE("msum examples") {
  auto c = unit_cert();
  auto z = c.x.ring();
  auto w = msum_cover(2, c);
  CHECK(w.target == range(z, -2, 2));
  CHECK(verify_witness(w).ok);
  CHECK(msum_cover(1, c).translates == std::vector<Element>{Element{0}});
  auto s = subring_cert();
  CHECK(msum_cover(3, s).translates == std::vector<Element>{Element{0}});
}

TEST_CASE("k11 examples") {
  auto c = unit_cert();
  auto z = c.x.ring();
  auto w = k11_cover(c);
  std::vector<Element> odd;
  for (int v = -11; v <= 11; v += 2) odd.push_back(Element{v});
  CHECK(w.translates == odd);
  CHECK(w.size() <= saturating_pow(2, 11));
  CHECK(verify_witness(w).ok);
  auto four = iterated_sum(c.x, 4);
  CHECK(w.target == sumset(four, prodset(c.x, four)));

  auto s = subring_cert();
  CHECK(k11_cover(s).translates == std::vector<Element>{Element{0}});
}

TEST_CASE("bound_table examples") {
  auto c = unit_cert();
  auto rows = bound_table(c, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].constructed_size == 1);
  CHECK(rows[0].exact_size == 1u);
  CHECK(rows[1].constructed_size == 3);
  CHECK(rows[1].exact_size == 1u);
  CHECK(rows[1].ratio() == doctest::Approx(3.0));
  for (const auto& row : bound_table(subring_cert(), 4)) {
    CHECK(row.constructed_size == 1);
    CHECK(row.exact_size == 1u);
  }
  ConstructiveOptions pruned;
  pruned.pruned = true;
  auto p = bound_table(c, 3, pruned);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(p[i].pruned_size);
    CHECK(*p[i].pruned_size <= p[i].constructed_size);
    CHECK(p[i].constructed_size == rows[i].constructed_size);
  }
}

TEST_CASE("saturating_pow") {
  CHECK(saturating_pow(2, 11) == 2048);
  CHECK(saturating_pow(1, 60) == 1);
  CHECK(saturating_pow(0, 0) == 1);
  CHECK(saturating_pow(1u << 20, 11) == UINT64_MAX);
}

TEST_CASE("constructive covers verify and dominate exact sizes") {
  for (const auto& c : random_certs(40, 41)) {
    auto rows = bound_table(c, 3);
    for (const auto& row : rows) {
      CHECK(verify_witness(row.constructed).ok);
      if (row.exact_size && row.exact_optimal) CHECK(row.constructed_size >= *row.exact_size);
    }
    auto k11 = k11_cover(c);
    CHECK(verify_witness(k11).ok);
    CHECK(k11.size() <= saturating_pow(c.k, 11));
    CHECK(verify_witness(msum_cover(2, c)).ok);
  }
}

TEST_CASE("every level's derivations evaluate to their values") {
  for (const auto& c : random_certs(25, 43)) {
    const Ring& r = *c.x.ring();
    for (const auto& l : claim2_cover(3, c).levels)
      for (auto v : l.f_m.values()) {
        const auto& t = *l.f_m.term(v);
        CHECK(evaluate_term(r, t) == v);
        if (t.words <= 4096) CHECK(sum_of_words(r, t) == v);
      }
  }
}

TEST_CASE("bound_table is deterministic") {
  auto c = random_certs(1, 47).front();
  auto a = bound_table(c, 3);
  auto b = bound_table(c, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].constructed.translates == b[i].constructed.translates);
    CHECK(a[i].exact_size == b[i].exact_size);
  }
}
