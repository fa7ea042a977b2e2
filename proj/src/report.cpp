#include "apx/report.hpp"

#include <functional>
#include <map>

#include "apx/error.hpp"

namespace apx {

namespace {

template <typename E, std::size_t N>
E enum_from(const std::string& s, const E (&values)[N], const char* what) {
  for (E v : values)
    if (s == to_string(v)) return v;
  throw Error(ErrorKind::syntax, std::string("unknown ") + what + " '" + s + "'");
}

const CoverMethod kMethods[] = {CoverMethod::exact, CoverMethod::greedy, CoverMethod::constructive};
const ApproxMode kModes[] = {ApproxMode::ring, ApproxMode::group};

const char* kind_name(Derivation::Kind k) {
  switch (k) {
    case Derivation::Kind::member: return "member";
    case Derivation::Kind::product: return "product";
    case Derivation::Kind::sum: return "sum";
  }
  return "?";
}

Derivation::Kind kind_from(const std::string& s) {
  if (s == "member") return Derivation::Kind::member;
  if (s == "product") return Derivation::Kind::product;
  if (s == "sum") return Derivation::Kind::sum;
  throw Error(ErrorKind::syntax, "unknown derivation kind '" + s + "'");
}

Json table_rows(const std::vector<std::uint32_t>& flat, std::size_t n) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    rows.push_back(std::vector<std::uint32_t>(flat.begin() + i * n, flat.begin() + (i + 1) * n));
  return rows;
}

std::vector<std::uint32_t> table_flat(const Json& rows, std::size_t n) {
  std::vector<std::uint32_t> out;
  if (rows.size() != n) throw Error(ErrorKind::syntax, "table has the wrong number of rows");
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(ErrorKind::syntax, "table row has the wrong length");
    for (const auto& v : row) out.push_back(v.get<std::uint32_t>());
  }
  return out;
}

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> opt_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

Json pair_to_json(const Ring& r, const std::optional<ElementPair>& p) {
  if (!p) return nullptr;
  return Json::array({r.render(p->first), r.render(p->second)});
}

Json commensurability_to_json(const CommensurabilityResult& c) {
  Json j;
  j["k_ab"] = opt(c.k_ab);
  j["k_ba"] = opt(c.k_ba);
  j["constant"] = opt(c.constant());
  j["optimal"] = c.optimal;
  j["ab"] = c.ab ? witness_to_json(*c.ab) : Json(nullptr);
  j["ba"] = c.ba ? witness_to_json(*c.ba) : Json(nullptr);
  return j;
}

Json document(const char* type, const Ring& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = type;
  j["ring"] = ring_to_json(r);
  return j;
}

Json sweep_row_to_json(const SweepRow& row) {
  Json j;
  j["id"] = row.id;
  j["ring"] = row.ring;
  j["params"] = row.params;
  j["size"] = row.size;
  j["k"] = opt(row.k);
  j["k_optimal"] = row.k_optimal;
  j["characteristic"] = row.characteristic;
  j["ring_size"] = opt(row.ring_size);
  j["verdict"] = row.verdict;
  j["core_size"] = opt(row.core_size);
  j["core_is_subring"] = opt(row.core_is_subring);
  j["commensurability"] = opt(row.commensurability);
  j["k11_bound"] = row.k11_bound;
  j["structure_ok"] = row.structure_ok;
  j["subring_size"] = opt(row.subring_size);
  j["strategy"] = row.strategy;
  j["exhaustive"] = row.exhaustive;
  j["error"] = row.error;
  return j;
}

// Collects check names and failures for one document.
class Checker {
 public:
  explicit Checker(VerifyReport& out) : out_(out) {}

  void expect(bool ok, const std::string& what) {
    out_.checked.push_back(what);
    if (!ok) {
      out_.ok = false;
      out_.failures.push_back(what);
    }
  }

  void witness(const CoverWitness& w, const std::string& what) {
    auto v = verify_witness(w);
    std::string detail = what + " covers its target";
    if (!v.ok && v.uncovered)
      detail += " (uncovered " + w.target.ring()->render(*v.uncovered) + ")";
    expect(v.ok, detail);
  }

  void optimal(const CoverWitness& w, const std::string& what, const Limits& limits) {
    if (!w.optimal) return;
    auto again = cover_by_translates(w.target, w.base, true, limits);
    expect(again.optimal && again.size() == w.size(), what + " is a minimum cover");
  }

 private:
  VerifyReport& out_;
};

void verify_certificate_json(Checker& c, const RingHandle& r, const Json& j, const Limits& limits) {
  auto cert = certificate_from_json(r, j);
  auto v = verify_certificate(cert, limits);
  c.expect(v.ok, "certificate" + (v.ok ? std::string() : ": " + v.reason));
  if (cert.minimal) {
    auto again = approx_constant(cert.x, cert.mode, true, limits);
    c.expect(again.minimal && again.k == cert.k, "certificate k is minimal");
  }
}

std::optional<CommensurabilityResult> commensurability_from_json(const RingHandle& r,
                                                                 const Json& j) {
  if (j.is_null()) return std::nullopt;
  CommensurabilityResult c{FiniteSet(r), FiniteSet(r)};
  c.k_ab = opt_from<std::size_t>(j, "k_ab");
  c.k_ba = opt_from<std::size_t>(j, "k_ba");
  c.optimal = j.at("optimal").get<bool>();
  if (!j.at("ab").is_null()) c.ab = witness_from_json(r, j.at("ab"));
  if (!j.at("ba").is_null()) c.ba = witness_from_json(r, j.at("ba"));
  if (c.ab) c.a = c.ab->target;
  if (c.ba) c.b = c.ba->target;
  return c;
}

void verify_commensurability(Checker& c, const Json& j, const RingHandle& r, const FiniteSet& a,
                             const FiniteSet& b, const std::string& what, const Limits& limits) {
  auto cm = commensurability_from_json(r, j);
  if (!cm) return;
  if (cm->ab) {
    c.expect(cm->ab->target == a && cm->ab->base == b, what + ": first cover has the right sets");
    c.witness(*cm->ab, what + ": first cover");
    c.optimal(*cm->ab, what + ": first cover", limits);
    c.expect(cm->k_ab == cm->ab->size(), what + ": first count");
  }
  if (cm->ba) {
    c.expect(cm->ba->target == b && cm->ba->base == a, what + ": second cover has the right sets");
    c.witness(*cm->ba, what + ": second cover");
    c.optimal(*cm->ba, what + ": second cover", limits);
    c.expect(cm->k_ba == cm->ba->size(), what + ": second count");
  }
}

}  // namespace

Json descriptor_to_json(const RingDescriptor& d) {
  struct Visit {
    Json operator()(const ModularDesc& m) const { return {{"kind", "zmod"}, {"n", m.n}}; }
    Json operator()(const PrimeFieldDesc& m) const { return {{"kind", "prime_field"}, {"p", m.p}}; }
    Json operator()(const PolyQuotientDesc& m) const {
      return {{"kind", "polyquo"}, {"p", m.p}, {"modulus", m.modulus}};
    }
    Json operator()(const GaloisFieldDesc& m) const {
      return {{"kind", "gf"}, {"p", m.p}, {"k", m.k}, {"poly", m.poly}};
    }
    Json operator()(const MatrixDesc& m) const {
      return {{"kind", "mat"}, {"size", m.size}, {"base", descriptor_to_json(*m.base)}};
    }
    Json operator()(const ProductDesc& m) const {
      Json f = Json::array();
      for (const auto& x : m.factors) f.push_back(descriptor_to_json(x));
      return {{"kind", "prod"}, {"factors", f}};
    }
    Json operator()(const LazyIntegersDesc&) const { return {{"kind", "int"}}; }
    Json operator()(const LazyPolyDesc& m) const { return {{"kind", "poly"}, {"p", m.p}}; }
    Json operator()(const TableDesc& m) const {
      return {{"kind", "table"},
              {"n", m.n},
              {"source", m.source},
              {"add", table_rows(m.add, m.n)},
              {"mul", table_rows(m.mul, m.n)}};
    }
  };
  return std::visit(Visit{}, d.value);
}

RingDescriptor descriptor_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "zmod") return {ModularDesc{j.at("n").get<std::int64_t>()}};
  if (kind == "prime_field") return {PrimeFieldDesc{j.at("p").get<std::int64_t>()}};
  if (kind == "polyquo")
    return {PolyQuotientDesc{j.at("p").get<std::int64_t>(),
                             j.at("modulus").get<std::vector<std::int64_t>>()}};
  if (kind == "gf")
    return {GaloisFieldDesc{j.at("p").get<std::int64_t>(), j.at("k").get<int>(),
                            j.at("poly").get<std::vector<std::int64_t>>()}};
  if (kind == "mat")
    return {MatrixDesc{std::make_shared<const RingDescriptor>(descriptor_from_json(j.at("base"))),
                       j.at("size").get<int>()}};
  if (kind == "prod") {
    ProductDesc p;
    for (const auto& f : j.at("factors")) p.factors.push_back(descriptor_from_json(f));
    return {p};
  }
  if (kind == "int") return {LazyIntegersDesc{}};
  if (kind == "poly") return {LazyPolyDesc{j.at("p").get<std::int64_t>()}};
  if (kind == "table") {
    TableDesc t;
    t.n = j.at("n").get<std::size_t>();
    t.add = table_flat(j.at("add"), t.n);
    t.mul = table_flat(j.at("mul"), t.n);
    t.source = j.value("source", std::string());
    return {t};
  }
  throw Error(ErrorKind::syntax, "unknown ring kind '" + kind + "'");
}

Json ring_to_json(const Ring& r) {
  return {{"dsl", r.dsl()}, {"descriptor", descriptor_to_json(r.descriptor())}};
}

RingHandle ring_from_json(const Json& j) { return make_ring(descriptor_from_json(j.at("descriptor"))); }

Json element_to_json(const Ring& r, Element x) { return r.render(x); }

Element element_from_json(const Ring& r, const Json& j) {
  return r.parse_element(j.get<std::string>());
}

Json set_to_json(const FiniteSet& s) {
  Json out = Json::array();
  for (auto x : s) out.push_back(s.ring()->render(x));
  return out;
}

FiniteSet set_from_json(const RingHandle& r, const Json& j) {
  std::vector<Element> e;
  for (const auto& v : j) e.push_back(element_from_json(*r, v));
  return FiniteSet(r, e);
}

Json witness_to_json(const CoverWitness& w) {
  const Ring& r = *w.target.ring();
  Json t = Json::array();
  for (auto x : w.translates) t.push_back(r.render(x));
  Json j;
  j["method"] = to_string(w.method);
  j["size"] = w.size();
  j["optimal"] = w.optimal;
  j["nodes"] = w.stats.nodes;
  j["node_limit_hit"] = w.stats.node_limit_hit;
  j["target"] = set_to_json(w.target);
  j["base"] = set_to_json(w.base);
  j["translates"] = t;
  return j;
}

CoverWitness witness_from_json(const RingHandle& r, const Json& j) {
  CoverWitness w{set_from_json(r, j.at("target")), set_from_json(r, j.at("base"))};
  for (const auto& t : j.at("translates")) w.translates.push_back(element_from_json(*r, t));
  w.optimal = j.at("optimal").get<bool>();
  w.method = enum_from(j.at("method").get<std::string>(), kMethods, "cover method");
  w.stats.nodes = j.value("nodes", std::uint64_t{0});
  w.stats.node_limit_hit = j.value("node_limit_hit", false);
  return w;
}

Json certificate_to_json(const ApproxCertificate& c) {
  const Ring& r = *c.x.ring();
  Json d = Json::array();
  for (const auto& der : c.derivations)
    d.push_back({{"kind", kind_name(der.kind)},
                 {"a", r.render(der.a)},
                 {"b", r.render(der.b)},
                 {"c", r.render(der.c)}});
  Json j;
  j["mode"] = to_string(c.mode);
  j["k"] = c.k;
  j["minimal"] = c.minimal;
  j["x"] = set_to_json(c.x);
  j["f"] = set_to_json(c.f);
  j["derivations"] = d;
  j["f_growth_level"] = opt(c.f_growth_level);
  j["nodes"] = c.stats.nodes;
  return j;
}

ApproxCertificate certificate_from_json(const RingHandle& r, const Json& j) {
  ApproxCertificate c{set_from_json(r, j.at("x")), j.at("k").get<std::size_t>(),
                      set_from_json(r, j.at("f"))};
  c.mode = enum_from(j.at("mode").get<std::string>(), kModes, "mode");
  c.minimal = j.at("minimal").get<bool>();
  for (const auto& d : j.at("derivations"))
    c.derivations.push_back(Derivation{kind_from(d.at("kind").get<std::string>()),
                                       element_from_json(*r, d.at("a")),
                                       element_from_json(*r, d.at("b")),
                                       element_from_json(*r, d.at("c"))});
  c.f_growth_level = opt_from<std::size_t>(j, "f_growth_level");
  c.stats.nodes = j.value("nodes", std::uint64_t{0});
  return c;
}

Json certificate_document(const ApproxCertificate& c) {
  auto j = document("certificate", *c.x.ring());
  j["certificate"] = certificate_to_json(c);
  return j;
}

Json witness_document(const CoverWitness& w) {
  auto j = document("cover", *w.target.ring());
  j["witness"] = witness_to_json(w);
  return j;
}

Json growth_document(const GrowthProfile& g) {
  auto j = document("growth", *g.base.ring());
  j["base"] = set_to_json(g.base);
  Json entries = Json::array();
  for (const auto& e : g.entries)
    entries.push_back({{"n", e.n},
                       {"size", e.set.size()},
                       {"covering_number", opt(e.covering_number)},
                       {"covering_optimal", e.covering_optimal}});
  j["entries"] = entries;
  return j;
}

Json fact21_document(const ApproxCertificate& c, const Claim2Result& claim2,
                     const std::vector<CoverWitness>& msum,
                     const std::vector<ConstructiveCoverReport>& table) {
  const Ring& r = *c.x.ring();
  auto j = document("fact21", r);
  j["certificate"] = certificate_to_json(c);
  Json levels = Json::array();
  for (const auto& l : claim2.levels) {
    Json terms = Json::array();
    for (auto v : l.f_m.values()) {
      const auto& t = *l.f_m.term(v);
      Json entry{{"value", r.render(v)}, {"words", t.words}};
      if (t.letters <= 256) entry["term"] = render_term(r, t);
      terms.push_back(entry);
    }
    levels.push_back({{"m", l.m},
                      {"full_size", l.full_size},
                      {"bound_formula_value", l.bound_formula_value},
                      {"derivations", terms},
                      {"witness", witness_to_json(l.witness)}});
  }
  j["claim2"] = levels;
  Json ms = Json::array();
  for (std::size_t i = 0; i < msum.size(); ++i)
    ms.push_back({{"m", i + 1}, {"witness", witness_to_json(msum[i])}});
  j["msum"] = ms;
  Json rows = Json::array();
  for (const auto& row : table)
    rows.push_back({{"m", row.m},
                    {"constructive_size", row.constructed_size},
                    {"pruned_size", opt(row.pruned_size)},
                    {"exact_size", opt(row.exact_size)},
                    {"exact_optimal", row.exact_optimal},
                    {"bound_formula_value", row.bound_formula_value},
                    {"ratio", opt(row.ratio())}});
  j["bound_table"] = rows;
  return j;
}

Json k11_document(const ApproxCertificate& c, const CoverWitness& w) {
  auto j = document("k11", *c.x.ring());
  j["certificate"] = certificate_to_json(c);
  j["k11_bound"] = saturating_pow(c.k, 11);
  j["witness"] = witness_to_json(w);
  return j;
}

Json classification_document(const ClassificationReport& rep) {
  const Ring& r = *rep.x.ring();
  auto j = document("classification", r);
  j["x"] = set_to_json(rep.x);
  j["certificate"] = certificate_to_json(rep.certificate);
  j["k"] = rep.k;
  j["core_size"] = rep.core.size();
  j["core_subring"] = {{"ok", rep.core_subring.ok},
                       {"operation", rep.core_subring.operation},
                       {"violation", pair_to_json(r, rep.core_subring.violation)}};
  j["commensurability"] =
      rep.commensurability ? commensurability_to_json(*rep.commensurability) : Json(nullptr);
  j["commensurability_to_x"] = opt(rep.commensurability_to_x);
  j["k11_bound"] = rep.k11_bound;
  j["small_threshold"] = rep.small_threshold;
  j["verdict"] = to_string(rep.verdict);
  j["hypothesis"] = {{"domain", rep.hypothesis.domain},
                     {"known", rep.hypothesis.known},
                     {"sampled", rep.hypothesis.sampled},
                     {"pairs_checked", rep.hypothesis.pairs_checked}};
  j["weak_hypothesis"] = rep.weak_hypothesis_used;
  return j;
}

Json search_document(const FiniteSet& x, const SubringSearchResult& res) {
  auto j = document("pos-char", *x.ring());
  j["x"] = set_to_json(x);
  j["core_size"] = res.core.size();
  j["found"] = res.found ? set_to_json(*res.found) : Json(nullptr);
  j["containment_ok"] = res.containment_ok;
  j["commensurability"] = opt(res.commensurability);
  j["detail"] = res.detail ? commensurability_to_json(*res.detail) : Json(nullptr);
  j["strategy"] = to_string(res.strategy_used);
  j["exhaustive"] = res.exhaustive;
  j["candidates"] = res.candidates;
  return j;
}

Json model_document(const ModelReport& rep, const ModelOptions& opts) {
  const Ring& r = *rep.x.ring();
  auto j = document("model", r);
  j["x"] = set_to_json(rep.x);
  j["ideal"] = set_to_json(rep.ideal);
  j["options"] = {{"depth_cap", opts.depth_cap},
                  {"exhaustive_quotient", opts.exhaustive_quotient},
                  {"samples", opts.samples},
                  {"seed", opts.seed}};
  j["generated_size"] = rep.generated.size();
  j["m"] = rep.m;
  j["quotient_size"] = rep.quotient_size;
  j["clause_i"] = rep.clause_i;
  j["u_is_image"] = rep.u_is_image;
  j["preimage_u"] = set_to_json(rep.preimage_u);
  j["clause_ii"] = rep.clause_ii;
  j["max_genericity"] = rep.max_genericity;
  j["subsets_tested"] = rep.subsets_tested;
  j["all_subsets"] = rep.all_subsets;
  j["ideal_witness"] = rep.ideal_witness ? witness_to_json(*rep.ideal_witness) : Json(nullptr);
  j["clause_iii"] = rep.clause_iii;
  j["commensurability"] =
      rep.commensurability ? commensurability_to_json(*rep.commensurability) : Json(nullptr);
  j["passed"] = rep.passed();
  return j;
}

Json gallery_document(const GallerySet& g, const std::string& kind, std::int64_t param) {
  auto j = document("gallery", *g.set.ring());
  j["kind"] = kind;
  j["param"] = param;
  j["name"] = g.name;
  j["size"] = g.set.size();
  j["set"] = set_to_json(g.set);
  Json props = Json::object();
  for (const auto& [k, v] : g.properties) props[k] = v;
  j["properties"] = props;
  return j;
}

Json sweep_document(const SweepReport& rep) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = "sweep";
  j["config"] = to_config(rep.spec);
  j["seed"] = rep.seed;
  Json rows = Json::array();
  for (const auto& row : rep.rows) rows.push_back(sweep_row_to_json(row));
  j["rows"] = rows;
  Json c = Json::array();
  for (const auto& [key, v] : rep.empirical_c)
    c.push_back({{"k", key.first}, {"characteristic", key.second}, {"max_commensurability", v}});
  j["empirical_c"] = c;
  Json n = Json::array();
  for (const auto& [k, v] : rep.empirical_n) n.push_back({{"k", k}, {"max_size", v}});
  j["empirical_n"] = n;
  Json s = Json::array();
  for (const auto& t : rep.sensitivity)
    s.push_back({{"threshold", t.threshold},
                 {"small", t.small},
                 {"structured", t.structured},
                 {"counterexample_candidates", t.candidates}});
  j["sensitivity"] = s;
  j["violation"] = rep.violation;
  return j;
}

VerifyReport verify_document(const Json& doc, const Limits& limits) {
  VerifyReport out;
  Checker c(out);
  if (doc.value("schema_version", 0) != kSchemaVersion)
    throw Error(ErrorKind::syntax, "unsupported schema_version");
  out.type = doc.at("type").get<std::string>();
  const auto& type = out.type;

  if (type == "sweep") {
    auto spec = parse_sweep_spec(doc.at("config").get<std::string>());
    auto again = run_sweep(spec, doc.at("seed").get<std::uint64_t>(), 1, limits);
    auto fresh = sweep_document(again);
    c.expect(fresh.at("rows") == doc.at("rows"), "sweep rows reproduce");
    c.expect(fresh.at("empirical_c") == doc.at("empirical_c"), "empirical_c reproduces");
    c.expect(fresh.at("empirical_n") == doc.at("empirical_n"), "empirical_n reproduces");
    c.expect(fresh.at("sensitivity") == doc.at("sensitivity"), "sensitivity table reproduces");
    c.expect(fresh.at("violation") == doc.at("violation"), "violation flag reproduces");
    return out;
  }

  auto ring = ring_from_json(doc.at("ring"));

  if (type == "certificate") {
    verify_certificate_json(c, ring, doc.at("certificate"), limits);
  } else if (type == "cover") {
    auto w = witness_from_json(ring, doc.at("witness"));
    c.witness(w, "cover");
    c.optimal(w, "cover", limits);
  } else if (type == "growth") {
    auto base = set_from_json(ring, doc.at("base"));
    const auto& entries = doc.at("entries");
    bool cover = false;
    for (const auto& e : entries) cover = cover || !e.at("covering_number").is_null();
    auto g = growth_sequence(base, entries.empty() ? 0 : entries.back().at("n").get<std::size_t>(),
                             cover, limits);
    auto fresh = growth_document(g);
    c.expect(fresh.at("entries") == entries, "growth sizes and covering numbers reproduce");
  } else if (type == "fact21") {
    const auto& cj = doc.at("certificate");
    verify_certificate_json(c, ring, cj, limits);
    auto cert = certificate_from_json(ring, cj);
    for (const auto& l : doc.at("claim2")) {
      auto m = l.at("m").get<std::size_t>();
      auto w = witness_from_json(ring, l.at("witness"));
      std::string tag = "claim2 m=" + std::to_string(m);
      c.expect(w.target == power_products(cert.x, m, limits).exact, tag + " target is X^m");
      c.expect(w.base == cert.x, tag + " base is X");
      c.witness(w, tag);
      std::vector<Element> vals;
      for (const auto& d : l.at("derivations")) vals.push_back(element_from_json(*ring, d.at("value")));
      c.expect(FiniteSet(ring, vals) == FiniteSet(ring, w.translates), tag + " derivations list the translates");
    }
    for (const auto& ms : doc.at("msum")) {
      auto m = ms.at("m").get<std::size_t>();
      auto w = witness_from_json(ring, ms.at("witness"));
      std::string tag = "msum m=" + std::to_string(m);
      c.expect(w.target == msum(cert.x, m, limits), tag + " target is m(X^{<=m})");
      c.expect(w.base == cert.x, tag + " base is X");
      c.witness(w, tag);
    }
    for (const auto& row : doc.at("bound_table")) {
      auto m = row.at("m").get<std::size_t>();
      std::string tag = "bound_table m=" + std::to_string(m);
      if (row.at("exact_optimal").get<bool>()) {
        auto target = power_products(cert.x, m, limits).exact;
        auto exact = cover_by_translates(target, cert.x, true, limits);
        c.expect(exact.optimal && exact.size() == row.at("exact_size").get<std::size_t>(),
                 tag + " exact size");
        c.expect(row.at("constructive_size").get<std::size_t>() >= exact.size(),
                 tag + " constructive size dominates exact");
      }
    }
  } else if (type == "k11") {
    const auto& cj = doc.at("certificate");
    verify_certificate_json(c, ring, cj, limits);
    auto cert = certificate_from_json(ring, cj);
    auto w = witness_from_json(ring, doc.at("witness"));
    auto four = iterated_sum(cert.x, 4, limits);
    c.expect(w.target == sumset(four, prodset(cert.x, four, limits), limits),
             "target is 4X + X*4X");
    c.expect(w.base == cert.x, "base is X");
    c.witness(w, "k11");
    c.expect(w.size() <= saturating_pow(cert.k, 11), "translate count within K^11");
  } else if (type == "classification") {
    auto x = set_from_json(ring, doc.at("x"));
    const auto& cj = doc.at("certificate");
    verify_certificate_json(c, ring, cj, limits);
    auto cert = certificate_from_json(ring, cj);
    c.expect(cert.x == x && cert.k == doc.at("k").get<std::size_t>(), "certificate matches X and k");
    auto core = core_set(x, limits);
    c.expect(core.size() == doc.at("core_size").get<std::size_t>(), "core size");
    auto sub = is_subring(core);
    c.expect(sub.ok == doc.at("core_subring").at("ok").get<bool>(), "core subring check");
    verify_commensurability(c, doc.at("commensurability"), ring, core, x, "core vs X", limits);
    auto k11 = saturating_pow(cert.k, 11);
    c.expect(doc.at("k11_bound").get<std::uint64_t>() == k11, "K^11 bound");
    auto threshold = doc.at("small_threshold").get<std::size_t>();
    auto comm = opt_from<std::size_t>(doc, "commensurability_to_x");
    std::string expect;
    if (x.size() < threshold) expect = to_string(Verdict::small);
    else if (sub.ok && comm && *comm <= k11) expect = to_string(Verdict::structured);
    else expect = to_string(Verdict::counterexample_candidate);
    c.expect(doc.at("verdict").get<std::string>() == expect, "verdict follows from the fields");
    const auto& h = doc.at("hypothesis");
    if (!h.at("sampled").get<bool>() && !doc.at("weak_hypothesis").get<bool>()) {
      auto z = check_zero_divisors(*ring);
      c.expect(z.domain, "ring has no zero divisors");
    }
  } else if (type == "pos-char") {
    auto x = set_from_json(ring, doc.at("x"));
    auto core = core_set(x, limits);
    c.expect(core.size() == doc.at("core_size").get<std::size_t>(), "core size");
    if (!doc.at("found").is_null()) {
      auto s = set_from_json(ring, doc.at("found"));
      c.expect(is_subring(s).ok, "found set is a subring");
      c.expect(s.is_subset_of(core), "found subring lies in the core");
      verify_commensurability(c, doc.at("detail"), ring, s, x, "subring vs X", limits);
      auto again = commensurability(s, x, true, limits);
      c.expect(again.constant() == opt_from<std::size_t>(doc, "commensurability"),
               "commensurability reproduces");
    }
  } else if (type == "model") {
    auto x = set_from_json(ring, doc.at("x"));
    auto ideal = set_from_json(ring, doc.at("ideal"));
    const auto& o = doc.at("options");
    ModelOptions opts;
    opts.depth_cap = o.at("depth_cap").get<std::size_t>();
    opts.exhaustive_quotient = o.at("exhaustive_quotient").get<std::size_t>();
    opts.samples = o.at("samples").get<std::size_t>();
    opts.seed = o.at("seed").get<std::uint64_t>();
    opts.limits = limits;
    if (!doc.at("ideal_witness").is_null()) {
      auto w = witness_from_json(ring, doc.at("ideal_witness"));
      c.expect(w.target == x && w.base == ideal, "ideal witness has the right sets");
      c.witness(w, "ideal witness");
    }
    auto preimage = set_from_json(ring, doc.at("preimage_u"));
    verify_commensurability(c, doc.at("commensurability"), ring, preimage, x, "preimage vs X",
                            limits);
    auto fresh = model_document(finite_model_check(x, ideal, opts), opts);
    for (const char* key : {"m", "quotient_size", "clause_i", "u_is_image", "preimage_u",
                            "clause_ii", "max_genericity", "all_subsets", "clause_iii", "passed"})
      c.expect(fresh.at(key) == doc.at(key), std::string("model ") + key + " reproduces");
  } else if (type == "gallery") {
    auto kind = doc.at("kind").get<std::string>();
    auto param = doc.at("param").get<std::int64_t>();
    auto g = [&] {
      if (kind == "y-set") return gallery_y_set(param);
      if (kind == "linear-polys") return gallery_linear_polys(param, ring);
      if (kind == "interval") return gallery_interval(param, ring);
      throw Error(ErrorKind::syntax, "unknown gallery kind '" + kind + "'");
    }();
    c.expect(same_ring(g.set.ring(), ring), "gallery ring");
    c.expect(set_to_json(g.set) == doc.at("set"), "gallery set reproduces");
  } else {
    throw Error(ErrorKind::syntax, "unknown document type '" + type + "'");
  }
  return out;
}

}  // namespace apx
