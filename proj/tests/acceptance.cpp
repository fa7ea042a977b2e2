// Acceptance gate: one PASS/FAIL line per criterion, exit 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "apx/classify.hpp"
#include "apx/constructive.hpp"
#include "apx/report.hpp"
#include "apx/setalg.hpp"
#include "apx/sweep.hpp"
#include "oracle.hpp"

using namespace apx;

namespace {

const std::string data_dir = APX_TEST_DATA;

// Exact ring-mode constant of y_set(3), computed by oracle::ring_constant.
constexpr std::size_t kYSet3Constant = 2;

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Failures {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && first_.empty()) first_ = what;
    if (!ok) ++count_;
  }
  Outcome outcome(const std::string& summary) const {
    if (count_ == 0) return {true, summary};
    return {false, std::to_string(count_) + " failure(s), first: " + first_};
  }

 private:
  std::size_t count_ = 0;
  std::string first_;
};

FiniteSet interval(const RingHandle& r, std::int64_t n) {
  std::vector<Element> e;
  for (std::int64_t i = -n; i <= n; ++i) e.push_back(r->parse_element(std::to_string(i)));
  return FiniteSet(r, e);
}

FiniteSet literal(const std::string& ring, const std::string& set) {
  return parse_set_literal(parse_ring(ring), set);
}

// Inclusion check by direct loops, independent of verify_witness.
bool covers(const CoverWitness& w) {
  const Ring& r = *w.target.ring();
  std::set<Element> base(w.base.begin(), w.base.end());
  for (auto t : w.target) {
    bool hit = false;
    for (auto f : w.translates)
      if (base.count(r.sub(t, f))) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

std::vector<FiniteSet> corpus() {
  auto z = parse_ring("int");
  std::vector<FiniteSet> out;
  for (int n = 1; n <= 3; ++n) out.push_back(interval(z, n));
  out.push_back(literal("int", "{-2,0,2}"));
  out.push_back(literal("zmod:7", "{6,0,1}"));
  out.push_back(literal("zmod:8", "{0,2,4,6}"));
  out.push_back(literal("zmod:9", "{8,0,1}"));
  out.push_back(literal("zmod:12", "{0,3,9}"));
  out.push_back(literal("zmod:13", "{0,2,11,5,8}"));
  out.push_back(literal("zmod:16", "{0,4,12}"));
  out.push_back(literal("zmod:25", "{0,5,20,1,24}"));
  out.push_back(literal("zmod:30", "{0,10,20}"));
  out.push_back(literal("polyquo:2:t^2", "{0,1,t}"));
  out.push_back(literal("polyquo:3:t^2", "{0,t,2t}"));
  out.push_back(literal("polyquo:2:t^3", "{0,t^2,t}"));
  out.push_back(literal("polyquo:3:t^2+1", "{0,1,2}"));
  out.push_back(literal("gf:2^2:t^2+t+1", "{0,t}"));
  out.push_back(literal("prod:(zmod:3,zmod:5)", "{(0,0),(1,0),(2,0)}"));
  out.push_back(literal("mat:2:zmod:2", "{[[0,0],[0,0]], [[1,0],[0,0]], [[0,1],[0,0]]}"));
  out.push_back(literal("table:@" + data_dir + "/zero_mul_z4.table", "{0,1,3}"));
  out.push_back(literal("table:@" + data_dir + "/f3.table", "{0,1,2}"));
  return out;
}

Outcome criterion1() {
  Failures f;
  std::size_t subrings = 0;
  for (std::int64_t n = 2; n <= 60; ++n) {
    auto r = parse_ring("zmod:" + std::to_string(n));
    for (std::int64_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      std::vector<Element> e;
      for (std::int64_t v = 0; v < n; v += d) e.push_back(Element{v});
      FiniteSet s(r, e);
      std::string tag = "zmod:" + std::to_string(n) + " d=" + std::to_string(d);
      f.expect(is_subring(s).ok, tag + " is a subring");
      auto c = approx_constant(s, ApproxMode::ring, true);
      f.expect(c.k == 1 && c.minimal && c.f == FiniteSet(r, {Element{0}}), tag + " K=1, F={0}");
      auto g = growth_sequence(s, 3, false);
      for (const auto& entry : g.entries) f.expect(entry.set == s, tag + " growth is constant");
      ++subrings;
    }
  }
  return f.outcome(std::to_string(subrings) + " subrings");
}

Outcome criterion2() {
  Failures f;
  auto z = parse_ring("int");
  std::size_t last = 0;
  std::ostringstream ks;
  for (std::int64_t n = 1; n <= 6; ++n) {
    auto x = interval(z, n);
    auto c = approx_constant(x, ApproxMode::ring, true);
    auto expect = oracle::ring_constant(x);
    std::string tag = "N=" + std::to_string(n);
    f.expect(expect && c.minimal && c.k == *expect, tag + " matches the oracle");
    f.expect(c.k >= last, tag + " K nondecreasing");
    auto t = oracle::ring_target(x);
    auto lower = (t.size() + x.size() - 1) / x.size();
    f.expect(c.k >= lower, tag + " K >= ceil(|T|/(2N+1))");
    last = c.k;
    ks << (n > 1 ? "," : "") << c.k;
  }
  return f.outcome("K(1..6) = " + ks.str());
}

Outcome criterion3() {
  Failures f;
  std::size_t witnesses = 0, instances = 0, exact_rows = 0;
  for (const auto& x : corpus()) {
    auto cert = approx_constant(x, ApproxMode::ring, true);
    const std::string tag = x.ring()->dsl() + " " + x.render();
    f.expect(verify_certificate(cert).ok, tag + " certificate");
    auto claim2 = claim2_cover(4, cert);
    for (const auto& l : claim2.levels) {
      auto target = power_products(x, l.m).exact;
      f.expect(l.witness.target == target && l.witness.base == x,
               tag + " claim2 m=" + std::to_string(l.m) + " target");
      f.expect(covers(l.witness), tag + " claim2 m=" + std::to_string(l.m) + " covers");
      ++witnesses;
    }
    for (std::size_t m = 1; m <= 3; ++m) {
      auto w = msum_cover(m, cert);
      f.expect(w.target == msum(x, m) && w.base == x, tag + " msum target");
      f.expect(covers(w), tag + " msum m=" + std::to_string(m) + " covers");
      ++witnesses;
    }
    for (const auto& row : bound_table(cert, 4)) {
      if (!row.exact_size || !row.exact_optimal) continue;
      f.expect(row.constructed_size >= *row.exact_size,
               tag + " constructive >= exact at m=" + std::to_string(row.m));
      ++exact_rows;
    }
    ++instances;
  }
  f.expect(instances >= 20, "corpus has at least 20 instances");
  return f.outcome(std::to_string(instances) + " instances, " + std::to_string(witnesses) +
                   " witnesses, " + std::to_string(exact_rows) + " exact comparisons");
}

Outcome criterion4() {
  Failures f;
  double worst = 0;
  for (const auto& x : corpus()) {
    auto cert = approx_constant(x, ApproxMode::ring, true);
    const std::string tag = x.ring()->dsl() + " " + x.render();
    auto bound = saturating_pow(cert.k, 11);
    auto w = k11_cover(cert);
    f.expect(covers(w), tag + " k11 covers");
    f.expect(w.size() <= bound, tag + " |S_11| <= K^11");
    auto core = core_set(x);
    auto c = commensurability(core, x, true);
    f.expect(c.constant() && c.optimal && *c.constant() <= bound,
             tag + " commensurability of the core within K^11");
    if (c.constant())
      worst = std::max(worst, static_cast<double>(*c.constant()) / static_cast<double>(bound));
  }
  std::ostringstream s;
  s << "largest commensurability/K^11 = " << worst;
  return f.outcome(s.str());
}

Outcome criterion5() {
  Failures f;
  SweepSpec spec;
  spec.rings = {"zmod:5", "zmod:7", "zmod:11", "zmod:13"};
  spec.max_size = 9;
  spec.k_max = 3;
  spec.contains_zero = ZeroPolicy::required;
  auto rep = run_sweep(spec, 1);
  std::size_t classified = 0, structured = 0;
  for (const auto& row : rep.rows) {
    const std::string tag = "row " + std::to_string(row.id) + " " + row.ring + " " + row.params;
    f.expect(row.error.empty(), tag + " has no error");
    if (row.verdict == "filtered") continue;
    ++classified;
    f.expect(row.verdict != "counterexample-candidate", tag + " is not a counterexample candidate");
    if (row.verdict == "structured") {
      ++structured;
      f.expect(row.core_size == row.ring_size, tag + " core is the whole field");
    }
  }
  f.expect(!rep.violation, "sweep reports no violation");
  return f.outcome(std::to_string(rep.rows.size()) + " instances, " + std::to_string(classified) +
                   " with K<=3, " + std::to_string(structured) + " structured, 0 candidates");
}

Outcome criterion6() {
  Failures f;
  std::size_t rows = 0, exhaustive = 0;
  auto check = [&](SweepSpec spec) {
    spec.check = SweepCheck::pos_char;
    spec.exhaustive_limit = 32;
    auto rep = run_sweep(spec, 1);
    for (const auto& row : rep.rows) {
      const std::string tag = row.ring + " " + row.params;
      ++rows;
      f.expect(row.error.empty(), tag + " has no error");
      f.expect(row.verdict == "found", tag + " finds a subring");
      if (row.exhaustive) ++exhaustive;
      if (row.core_size && *row.core_size <= 32)
        f.expect(row.exhaustive, tag + " small core searched exhaustively");
      if (!row.commensurability || !row.k || !row.search) continue;
      auto cell = rep.empirical_c.find({*row.k, row.characteristic});
      f.expect(cell != rep.empirical_c.end() && *row.commensurability <= cell->second,
               tag + " within the cell maximum");
    }
    auto doc = sweep_document(rep);
    auto v = verify_document(Json::parse(doc.dump()));
    f.expect(v.ok, "sweep report re-verifies");
    for (const auto& row : rep.rows) {
      if (!row.search || !row.search->found) continue;
      const auto& s = *row.search;
      f.expect(is_subring(*s.found).ok && s.found->is_subset_of(s.core),
               row.ring + " " + row.params + " S is a subring of the core");
      if (s.detail) {
        if (s.detail->ab) f.expect(covers(*s.detail->ab), row.ring + " " + row.params + " S by X");
        if (s.detail->ba) f.expect(covers(*s.detail->ba), row.ring + " " + row.params + " X by S");
      }
    }
  };
  SweepSpec iv;
  iv.rings = {"zmod:2", "zmod:3", "zmod:5"};
  iv.generator = Generator::interval;
  iv.n_min = 1;
  iv.n_max = 4;
  check(iv);
  SweepSpec lin;
  lin.rings = {"polyquo:2:t^2", "polyquo:2:t^3", "polyquo:3:t^2",
               "polyquo:3:t^3", "polyquo:5:t^2", "polyquo:5:t^3"};
  lin.generator = Generator::linear;
  check(lin);
  return f.outcome(std::to_string(rows) + " rows, " + std::to_string(exhaustive) +
                   " exhaustive, " + std::to_string(rows - exhaustive) +
                   " with cores above 32 (heuristic)");
}

Outcome criterion7() {
  Failures f;
  auto y3 = gallery_y_set(3).set;
  auto oracle3 = oracle::ring_constant(y3);
  f.expect(oracle3 && *oracle3 == kYSet3Constant, "oracle value for p=3 is pinned");
  std::vector<std::size_t> ks;
  for (std::int64_t p : {3, 5, 7}) {
    auto c = approx_constant(gallery_y_set(p).set, ApproxMode::ring, true);
    f.expect(c.minimal, "p=" + std::to_string(p) + " solved exactly");
    ks.push_back(c.k);
  }
  f.expect(ks[0] == kYSet3Constant, "solver agrees with the pinned p=3 value");
  auto oracle5 = oracle::ring_constant(gallery_y_set(5).set);
  f.expect(oracle5 && *oracle5 == ks[1], "solver agrees with the oracle at p=5");
  f.expect(ks[0] < ks[1] && ks[1] < ks[2], "strictly increasing");
  return f.outcome("K = " + std::to_string(ks[0]) + ", " + std::to_string(ks[1]) + ", " +
                   std::to_string(ks[2]));
}

Outcome criterion8() {
  Failures f;
  std::mt19937_64 rng(2024);
  const char* rings[] = {"zmod:16", "zmod:27", "zmod:12", "polyquo:2:t^3", "zmod:25"};
  std::size_t pairs = 0, attempts = 0, max_n = 0;
  while (pairs < 100 && attempts < 100000) {
    ++attempts;
    auto r = parse_ring(rings[attempts % 5]);
    auto all = enumerate(*r);
    std::vector<Element> e{r->zero()};
    for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) e.push_back(all[rng() % all.size()]);
    auto x = symmetrize(FiniteSet(r, e));
    auto gen = closure(x, 1 << 12).generated;
    std::vector<Element> pick;
    for (auto g : gen)
      if (rng() % 3 == 0) pick.push_back(g);
    if (pick.empty()) continue;
    auto y = symmetrize(FiniteSet(r, pick));
    auto c = commensurability(x, y, true);
    if (!c.constant() || !c.optimal || *c.constant() > 4) continue;
    auto t = transfer_check(x, y);
    const std::string tag = r->dsl() + " Y=" + y.render();
    f.expect(t.k_y && t.k_y_optimal, tag + " has an exact constant");
    f.expect(t.n && t.contained, tag + " lies in X_{n+1}");
    if (t.n) max_n = std::max(max_n, *t.n);
    ++pairs;
  }
  f.expect(pairs == 100, "100 pairs generated");
  return f.outcome(std::to_string(pairs) + " pairs from " + std::to_string(attempts) +
                   " draws, largest n = " + std::to_string(max_n));
}

Outcome criterion9() {
  Failures f;
  struct Triple {
    const char* ring;
    const char* x;
    const char* ideal;
  };
  const Triple triples[] = {
      {"zmod:9", "{0,1,8}", "{0,3,6}"},
      {"zmod:9", "{0,1,8}", "{0}"},
      {"zmod:12", "{0,1,11}", "{0,6}"},
      {"zmod:12", "{0,1,11}", "{0,4,8}"},
      {"zmod:8", "{0,1,7}", "{0,4}"},
      {"zmod:8", "{0,1,7}", "{0,2,4,6}"},
      {"zmod:25", "{0,1,24}", "{0,5,10,15,20}"},
      {"polyquo:2:t^2", "{0,1,t}", "{0,t}"},
      {"prod:(zmod:3,zmod:3)", "{(0,0),(1,1),(2,2),(1,0),(2,0)}", "{(0,0),(1,0),(2,0)}"},
      {"polyquo:3:t^2", "{0,1,2,t,2t}", "{0,t,2t}"},
  };
  std::size_t passed = 0;
  for (const auto& t : triples) {
    auto r = parse_ring(t.ring);
    auto x = parse_set_literal(r, t.x);
    auto ideal = parse_set_literal(r, t.ideal);
    const std::string tag = std::string(t.ring) + " " + t.x + " / " + t.ideal;
    f.expect(ideal.is_subset_of(growth_sequence(x, 3, false).entries.back().set),
             tag + " ideal in X_3");
    auto rep = finite_model_check(x, ideal);
    f.expect(rep.clause_i, tag + " clause i");
    f.expect(rep.clause_ii, tag + " clause ii");
    f.expect(rep.clause_iii, tag + " clause iii");
    f.expect(rep.all_subsets, tag + " genericity checked for every neighbourhood");
    f.expect(rep.ideal_witness && covers(*rep.ideal_witness), tag + " ideal witness covers X");
    f.expect(rep.commensurability && rep.commensurability->optimal,
             tag + " exact commensurability");
    if (rep.passed()) ++passed;
  }
  return f.outcome(std::to_string(passed) + "/10 triples pass");
}

Outcome criterion10() {
  Failures f;
  std::mt19937_64 rng(10);
  const char* rings[] = {"zmod:30", "zmod:24", "mat:2:zmod:2", "polyquo:2:t^4", "zmod:50",
                         "prod:(zmod:4,zmod:6)"};
  std::size_t compared = 0, greedy_checked = 0;
  double worst = 0;
  for (int i = 0; i < 600; ++i) {
    auto r = parse_ring(rings[i % 6]);
    auto all = enumerate(*r);
    std::vector<Element> a, b;
    for (std::size_t j = 0, n = 1 + rng() % 24; j < n; ++j) a.push_back(all[rng() % all.size()]);
    for (std::size_t j = 0, n = 1 + rng() % 6; j < n; ++j) b.push_back(all[rng() % all.size()]);
    FiniteSet target(r, a), base(r, b);
    auto pool = difference_set(target, base);
    auto exact = cover_exact(target, base, pool);
    auto greedy = cover_greedy(target, base, pool);
    double ratio = static_cast<double>(greedy.size()) / static_cast<double>(exact.size());
    f.expect(exact.optimal, "exact solver finished");
    f.expect(ratio <= 1 + std::log(static_cast<double>(target.size())) + 1e-12,
             "greedy within 1+ln|target|");
    worst = std::max(worst, ratio);
    ++greedy_checked;
    if (pool.size() <= 20 && target.size() <= 24) {
      auto expect = oracle::min_cover(target, base, {pool.begin(), pool.end()});
      f.expect(expect && *expect == exact.size(), "exact equals exhaustive enumeration");
      ++compared;
    }
  }
  for (const auto& x : corpus()) {
    auto t = approximation_target(x, ApproxMode::ring);
    auto pool = difference_set(t, x);
    auto exact = cover_exact(t, x, pool);
    auto greedy = cover_greedy(t, x, pool);
    f.expect(static_cast<double>(greedy.size()) <=
                 static_cast<double>(exact.size()) * (1 + std::log(static_cast<double>(t.size()))),
             x.ring()->dsl() + " greedy within 1+ln|target|");
    ++greedy_checked;
  }
  std::ostringstream s;
  s << compared << " oracle comparisons, " << greedy_checked << " greedy checks, worst ratio "
    << worst;
  return f.outcome(s.str());
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "subring fixed points", 10, criterion1},
      {2, "interval calibration", 60, criterion2},
      {3, "constructive covers of X^m and m(X^{<=m})", 300, criterion3},
      {4, "K^11 bound", 300, criterion4},
      {5, "prime field dichotomy sweep", 600, criterion5},
      {6, "positive characteristic subring search", 600, criterion6},
      {7, "Y-set constants increase", 120, criterion7},
      {8, "commensurable sets inherit structure", 300, criterion8},
      {9, "finite model checks", 120, criterion9},
      {10, "solver integrity", 120, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.limit_seconds;
    bool ok = o.ok && in_time;
    if (!ok) ++failed;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", secs, c.limit_seconds);
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " ("
              << timing << ") " << (in_time ? "" : "over time limit; ") << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
