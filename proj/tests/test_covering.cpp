#include <cmath>
#include <random>

#include "apx/covering.hpp"
#include "apx/setalg.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace apx;
using testing::error_kind;
using testing::range;
using testing::set_of;

namespace {

FiniteSet pool_of(const FiniteSet& a, const FiniteSet& b) { return difference_set(a, b); }

FiniteSet random_set(const RingHandle& r, std::mt19937_64& rng, std::size_t max_size) {
  auto all = enumerate(*r);
  std::vector<Element> e;
  std::size_t n = 1 + rng() % max_size;
  for (std::size_t i = 0; i < n; ++i) e.push_back(all[rng() % all.size()]);
  return FiniteSet(r, e);
}

}  // namespace

TEST_CASE("verify_witness examples") {
  auto z = parse_ring("int");
  auto b = range(z, -1, 1);
  CHECK(verify_witness({b, b, {Element{0}}}).ok);
  auto bad = verify_witness({range(z, 0, 2), set_of(z, "{0}"), {Element{0}, Element{1}}});
  CHECK_FALSE(bad.ok);
  CHECK(bad.uncovered == Element{2});
  CHECK(verify_witness({FiniteSet(z), b, {}}).ok);
}

TEST_CASE("cover_greedy examples") {
  auto z = parse_ring("int");
  auto a = range(z, 0, 5), b = set_of(z, "{0,1}");
  CHECK(cover_greedy(a, b, pool_of(a, b)).size() == 3);
  CHECK(cover_greedy(b, b, pool_of(b, b)).translates == std::vector<Element>{Element{0}});
  auto w = cover_greedy(set_of(z, "{5}"), set_of(z, "{0}"), set_of(z, "{5}"));
  CHECK(w.translates == std::vector<Element>{Element{5}});
  CHECK_FALSE(w.optimal);
  CHECK(error_kind([&] { cover_greedy(a, b, set_of(z, "{0}")); }) == ErrorKind::uncoverable);
}

TEST_CASE("cover_exact examples") {
  auto z = parse_ring("int");
  auto a = range(z, -2, 2), b = range(z, -1, 1);
  auto w = cover_exact(a, b, pool_of(a, b));
  CHECK(w.size() == 2);
  CHECK(w.optimal);
  CHECK(verify_witness(w).ok);
  CHECK(cover_exact(b, b, pool_of(b, b)).size() == 1);
}

TEST_CASE("node limit returns the incumbent") {
  auto z = parse_ring("int");
  auto x = range(z, -6, 6);
  auto t = set_union(prodset(x, x), sumset(x, x));
  Limits l;
  l.node_limit = 1;
  auto w = cover_exact(t, x, pool_of(t, x), l);
  CHECK_FALSE(w.optimal);
  CHECK(w.stats.node_limit_hit);
  CHECK(verify_witness(w).ok);
}

TEST_CASE("exact covers match exhaustive search on small instances") {
  std::mt19937_64 rng(21);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    auto r = parse_ring(i % 3 == 0 ? "zmod:30" : i % 3 == 1 ? "mat:2:zmod:2" : "zmod:24");
    auto a = random_set(r, rng, 12);
    auto b = random_set(r, rng, 4);
    auto pool = pool_of(a, b);
    if (pool.size() > 20 || a.size() > 24) continue;
    auto exact = cover_exact(a, b, pool);
    auto greedy = cover_greedy(a, b, pool);
    auto expect = oracle::min_cover(a, b, {pool.begin(), pool.end()});
    REQUIRE(expect);
    CHECK(exact.size() == *expect);
    CHECK(exact.optimal);
    CHECK(greedy.size() >= exact.size());
    CHECK(static_cast<double>(greedy.size()) <=
          static_cast<double>(exact.size()) * (1 + std::log(static_cast<double>(a.size()))));
    CHECK(exact.size() * b.size() >= a.size());
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("enlarging the pool never increases the exact size") {
  std::mt19937_64 rng(23);
  auto r = parse_ring("zmod:40");
  for (int i = 0; i < 100; ++i) {
    auto a = random_set(r, rng, 10), b = random_set(r, rng, 5);
    auto pool = pool_of(a, b);
    auto bigger = set_union(pool, random_set(r, rng, 10));
    CHECK(cover_exact(a, b, bigger).size() <= cover_exact(a, b, pool).size());
  }
}

TEST_CASE("covering is deterministic") {
  std::mt19937_64 rng(29);
  auto r = parse_ring("zmod:64");
  for (int i = 0; i < 50; ++i) {
    auto a = random_set(r, rng, 20), b = random_set(r, rng, 6);
    auto w1 = cover_by_translates(a, b, true);
    auto w2 = cover_by_translates(a, b, true);
    CHECK(w1.translates == w2.translates);
    CHECK(std::is_sorted(w1.translates.begin(), w1.translates.end()));
  }
}

TEST_CASE("approx_constant examples") {
  auto z8 = parse_ring("zmod:8");
  auto s = approx_constant(set_of(z8, "{0,2,4,6}"), ApproxMode::ring, true);
  CHECK(s.k == 1);
  CHECK(s.f == set_of(z8, "{0}"));
  CHECK(s.minimal);

  auto z = parse_ring("int");
  auto c = approx_constant(range(z, -1, 1), ApproxMode::ring, true);
  CHECK(c.k == 2);
  CHECK(c.f == set_of(z, "{-1,1}"));
  CHECK(verify_certificate(c).ok);

  CHECK(error_kind([&] { approx_constant(set_of(z, "{1}"), ApproxMode::ring, true); }) ==
        ErrorKind::not_symmetric);
  CHECK(error_kind([&] { approx_constant(FiniteSet(z), ApproxMode::ring, true); }) ==
        ErrorKind::precondition);
  CHECK(approx_constant(set_of(z, "{0}"), ApproxMode::ring, true).k == 1);
}

TEST_CASE("group mode only covers X+X") {
  auto z = parse_ring("int");
  auto x = range(z, -3, 3);
  auto g = approx_constant(x, ApproxMode::group, true);
  auto r = approx_constant(x, ApproxMode::ring, true);
  CHECK(g.k == 2);
  CHECK(r.k > g.k);
}

TEST_CASE("certificates carry valid derivations") {
  auto z7 = parse_ring("zmod:7");
  auto c = approx_constant(set_of(z7, "{1,6,0}"), ApproxMode::ring, true);
  CHECK(c.k == 2);
  REQUIRE(c.derivations.size() == c.f.size());
  for (std::size_t i = 0; i < c.f.size(); ++i)
    CHECK(c.derivations[i].evaluate(*z7) == c.f.elements()[i]);
  CHECK(c.f_growth_level.has_value());

  auto tampered = c;
  tampered.derivations[0].a = Element{3};
  CHECK_FALSE(verify_certificate(tampered).ok);
  auto wrong_k = c;
  wrong_k.k = 1;
  CHECK_FALSE(verify_certificate(wrong_k).ok);
  auto too_small = c;
  too_small.f = FiniteSet(z7, {Element{0}});
  too_small.k = 1;
  too_small.derivations = {Derivation{Derivation::Kind::member, Element{0}, Element{0}, Element{0}}};
  CHECK_FALSE(verify_certificate(too_small).ok);
}

TEST_CASE("certificate_for accepts a caller-supplied F") {
  auto z = parse_ring("int");
  auto x = range(z, -1, 1);
  auto cert = certificate_for(x, set_of(z, "{-1,0,1}"), ApproxMode::ring);
  CHECK(cert.k == 3);
  CHECK_FALSE(cert.minimal);
  CHECK(error_kind([&] { certificate_for(x, set_of(z, "{0}"), ApproxMode::ring); }) ==
        ErrorKind::verification_failed);
}

TEST_CASE("certificates re-verify from scratch") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    auto r = parse_ring(i % 2 ? "zmod:21" : "polyquo:2:t^3");
    auto x = symmetrize(random_set(r, rng, 5));
    auto c = approx_constant(x, ApproxMode::ring, i % 3 != 0);
    CHECK(verify_certificate(c).ok);
  }
}

TEST_CASE("approximation constants match exhaustive search") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 60; ++i) {
    auto r = parse_ring(i % 2 ? "zmod:17" : "mat:2:zmod:2");
    auto x = symmetrize(random_set(r, rng, 3));
    auto c = approx_constant(x, ApproxMode::ring, true);
    auto expect = oracle::ring_constant(x);
    REQUIRE(expect);
    CHECK(c.k == *expect);
  }
}

TEST_CASE("commensurability examples") {
  auto z = parse_ring("int");
  auto a = range(z, -2, 2), b = range(z, -1, 1);
  auto self = commensurability(a, a, true);
  CHECK(self.k_ab == 1u);
  CHECK(self.k_ba == 1u);
  auto ab = commensurability(a, b, true);
  CHECK(ab.k_ab == 2u);
  CHECK(ab.k_ba == 1u);
  CHECK(ab.constant() == 2u);
  CHECK(ab.ab->size() == 2);
  CHECK(ab.ba->size() == 1);
  auto z10 = parse_ring("zmod:10");
  auto c = commensurability(set_of(z10, "{0}"), set_of(z10, "{0,5}"), true);
  CHECK(c.k_ab == 1u);
  CHECK(c.k_ba == 2u);
  CHECK(error_kind([&] { commensurability(FiniteSet(z), a, true); }) == ErrorKind::precondition);
}

TEST_CASE("is_generic examples") {
  auto z9 = parse_ring("zmod:9");
  auto x = range(z9, 0, 8);
  auto self = is_generic(x, x, 1);
  CHECK(self.generic);
  CHECK(self.witness->translates == std::vector<Element>{Element{0}});
  auto z = parse_ring("int");
  CHECK_FALSE(is_generic(set_of(z, "{0}"), set_of(z, "{0,1}"), 1).generic);
  auto cosets = is_generic(set_of(z9, "{0,3,6}"), x, 3);
  CHECK(cosets.generic);
  CHECK(cosets.witness->size() == 3);
}
