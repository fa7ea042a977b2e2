#include "command.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "apx/classify.hpp"
#include "apx/constructive.hpp"
#include "apx/error.hpp"
#include "apx/report.hpp"
#include "apx/setalg.hpp"
#include "apx/sweep.hpp"

namespace apx::cli {

namespace {

enum Group : unsigned {
  kRing = 1u << 0,
  kSet = 1u << 1,
  kBase = 1u << 2,
  kIdeal = 1u << 3,
  kMode = 1u << 4,
  kSolver = 1u << 5,
  kGrowth = 1u << 6,
  kFact = 1u << 7,
  kClassify = 1u << 8,
  kSeed = 1u << 9,
  kSweep = 1u << 10,
  kInput = 1u << 11,
  kGallery = 1u << 12,
  kLimits = 1u << 13,
};

struct SubcommandInfo {
  const char* name;
  const char* help;
  unsigned groups;
};

const SubcommandInfo kSubcommands[] = {
    {"approx", "Exact or greedy approximation constant of a symmetric set",
     kRing | kSet | kMode | kSolver | kLimits},
    {"growth", "Growth sequence X_0..X_n", kRing | kSet | kGrowth | kSolver | kLimits},
    {"cover", "Cover a target set by translates of a base set",
     kRing | kSet | kBase | kSolver | kLimits},
    {"fact21", "Constructive covers of X^m and m(X^{<=m}) with the bound table",
     kRing | kSet | kFact | kSolver | kLimits},
    {"k11", "Cover of 4X + X*4X by the 11-fold sumset of F", kRing | kSet | kSolver | kLimits},
    {"classify", "Dichotomy classification or subring search",
     kRing | kSet | kClassify | kSeed | kSolver | kLimits},
    {"model", "Finite quotient model checks", kRing | kSet | kIdeal | kSeed | kLimits},
    {"gallery", "Named example sets", kRing | kGallery},
    {"sweep", "Run a parameter sweep from a config file", kSweep | kSeed | kLimits},
    {"verify", "Re-check a JSON document from scratch", kInput | kLimits},
};

const SubcommandInfo* find_subcommand(const std::string& name) {
  for (const auto& s : kSubcommands)
    if (name == s.name) return &s;
  return nullptr;
}

void add_options(CLI::App* sub, unsigned groups, CommandConfig& c, bool& greedy, bool& exact,
                 bool& json, bool& csv) {
  if (groups & kRing) sub->add_option("--ring", c.ring, "Ring DSL");
  if (groups & kSet) {
    auto* s = sub->add_option("--set", c.set, "Set literal");
    auto* f = sub->add_option("--set-file", c.set_file, "File holding the set literal");
    s->excludes(f);
  }
  if (groups & kBase) sub->add_option("--base", c.base, "Base set literal")->required();
  if (groups & kIdeal) sub->add_option("--ideal", c.ideal, "Ideal literal")->required();
  if (groups & kMode)
    sub->add_option("--mode", c.mode, "ring or group")->check(CLI::IsMember({"ring", "group"}));
  if (groups & kSolver) {
    auto* e = sub->add_flag("--exact", exact, "Branch-and-bound covers (default)");
    auto* g = sub->add_flag("--greedy", greedy, "Greedy covers");
    e->excludes(g);
  }
  if (groups & kGrowth) {
    sub->add_option("--n", c.n, "Number of growth steps (default 3)");
    sub->add_flag("--covering", c.covering, "Covering numbers of each level by X");
  }
  if (groups & kFact) {
    sub->add_option("--m", c.m, "Largest m")->check(CLI::Range(1, 16));
    sub->add_flag("--pruned", c.pruned, "Greedy sub-covers between levels");
  }
  if (groups & kClassify) {
    sub->add_option("--check", c.check, "nzd or pos-char")
        ->check(CLI::IsMember({"nzd", "pos-char"}));
    sub->add_option("--small-threshold", c.small_threshold, "Sizes below this are small");
    sub->add_flag("--weak-hypothesis", c.weak_hypothesis,
                  "Zero-divisor hypothesis on the core only");
    sub->add_option("--exhaustive-limit", c.exhaustive_limit,
                    "Largest core searched exhaustively");
  }
  if (groups & kSeed) sub->add_option("--seed", c.seed, "Random seed");
  if (groups & kSweep) {
    sub->add_option("--config", c.config, "Sweep config file")->required();
    sub->add_option("--jobs", c.jobs, "Parallel rows")->check(CLI::PositiveNumber);
  }
  if (groups & kInput) sub->add_option("--input", c.input, "JSON document")->required();
  if (groups & kGallery) {
    sub->add_option("kind", c.gallery, "y-set, linear-polys or interval")
        ->required()
        ->check(CLI::IsMember({"y-set", "linear-polys", "interval"}));
    sub->add_option("--p", c.p, "Prime");
    sub->add_option("--n", c.n, "Interval radius");
  }
  if (groups & kLimits) {
    sub->add_option("--node-limit", c.node_limit, "Branch-and-bound node limit");
    sub->add_option("--cardinality-cap", c.cardinality_cap, "Largest derived set");
    sub->add_option("--closure-budget", c.closure_budget, "Closure element budget");
  }
  auto* j = sub->add_flag("--json", json, "JSON output");
  auto* v = sub->add_flag("--csv", csv, "CSV output");
  j->excludes(v);
  sub->add_option("--output", c.output, "Write the output to this file");
}

std::string shell_quote(const std::string& s) {
  bool plain = !s.empty();
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || std::string_view("-_.,:/@^+=").find(ch) !=
                                                             std::string_view::npos))
      plain = false;
  if (plain) return s;
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') out += "'\\''";
    else out += ch;
  }
  return out + "'";
}

// Two-column human-readable output.
class Table {
 public:
  template <typename T>
  void add(const std::string& key, const T& value) {
    std::ostringstream s;
    s << value;
    rows_.emplace_back(key, s.str());
  }
  void add(const std::string& key, bool value) { rows_.emplace_back(key, value ? "yes" : "no"); }
  template <typename T>
  void add(const std::string& key, const std::optional<T>& value) {
    if (value) add(key, *value);
    else rows_.emplace_back(key, "-");
  }

  std::string render() const {
    std::size_t w = 0;
    for (const auto& [k, v] : rows_) w = std::max(w, k.size());
    std::ostringstream out;
    for (const auto& [k, v] : rows_) out << std::left << std::setw(static_cast<int>(w + 2)) << k << v << '\n';
    return out.str();
  }

  std::string csv() const {
    std::string out = "key,value\n";
    for (const auto& [k, v] : rows_) {
      out += k + ",";
      if (v.find_first_of(",\"\n") != std::string::npos) {
        out += '"';
        for (char ch : v) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        out += '"';
      } else {
        out += v;
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

struct Output {
  Json doc;
  Table table;
  std::optional<std::string> csv;
  int code = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path);
  out << text;
}

RingHandle require_ring(const CommandConfig& c) {
  if (c.ring.empty()) throw Error(ErrorKind::precondition, "--ring is required");
  return parse_ring(c.ring);
}

FiniteSet require_set(const CommandConfig& c, const RingHandle& r) {
  if (!c.set.empty()) return parse_set_literal(r, c.set);
  if (!c.set_file.empty()) return parse_set_literal(r, read_file(c.set_file));
  throw Error(ErrorKind::precondition, "--set or --set-file is required");
}

void describe_certificate(Table& t, const ApproxCertificate& cert) {
  t.add("ring", cert.x.ring()->dsl());
  t.add("|X|", cert.x.size());
  t.add("mode", to_string(cert.mode));
  t.add("K", cert.k);
  t.add("minimal", cert.minimal);
  t.add("F", cert.f.render());
  t.add("F in X_n for n", cert.f_growth_level);
}

void describe_witness(Table& t, const std::string& prefix, const CoverWitness& w) {
  t.add(prefix + "target size", w.target.size());
  t.add(prefix + "translates", w.size());
  t.add(prefix + "optimal", w.optimal);
}

Output cmd_approx(const CommandConfig& c) {
  auto r = require_ring(c);
  auto x = require_set(c, r);
  auto mode = c.mode == "group" ? ApproxMode::group : ApproxMode::ring;
  auto cert = approx_constant(x, mode, c.exact, c.limits());
  Output o;
  describe_certificate(o.table, cert);
  o.doc = certificate_document(cert);
  return o;
}

Output cmd_growth(const CommandConfig& c) {
  auto r = require_ring(c);
  auto x = require_set(c, r);
  auto n = static_cast<std::size_t>(c.n.value_or(3));
  auto g = growth_sequence(x, n, c.covering, c.limits());
  Output o;
  o.table.add("ring", r->dsl());
  std::string csv = "n,size,covering_number,covering_optimal\n";
  for (const auto& e : g.entries) {
    std::string row = std::to_string(e.set.size());
    if (e.covering_number)
      row += "  covered by " + std::to_string(*e.covering_number) +
             (e.covering_optimal ? "" : " (not optimal)");
    o.table.add("|X_" + std::to_string(e.n) + "|", row);
    csv += std::to_string(e.n) + "," + std::to_string(e.set.size()) + "," +
           (e.covering_number ? std::to_string(*e.covering_number) : "") + "," +
           (e.covering_optimal ? "true" : "false") + "\n";
  }
  o.csv = csv;
  o.doc = growth_document(g);
  return o;
}

Output cmd_cover(const CommandConfig& c) {
  auto r = require_ring(c);
  auto target = require_set(c, r);
  auto base = parse_set_literal(r, c.base);
  auto w = cover_by_translates(target, base, c.exact, c.limits());
  Output o;
  o.table.add("ring", r->dsl());
  describe_witness(o.table, "", w);
  std::vector<Element> t = w.translates;
  o.table.add("translate set", FiniteSet(r, t).render());
  o.doc = witness_document(w);
  return o;
}

Output cmd_fact21(const CommandConfig& c) {
  auto r = require_ring(c);
  auto x = require_set(c, r);
  auto cert = approx_constant(x, ApproxMode::ring, c.exact, c.limits());
  ConstructiveOptions opts;
  opts.pruned = c.pruned;
  opts.limits = c.limits();
  auto claim2 = claim2_cover(c.m, cert, opts);
  std::vector<CoverWitness> ms;
  for (std::size_t m = 1; m <= c.m; ++m) ms.push_back(msum_cover(m, cert, opts));
  auto table = bound_table(cert, c.m, opts);
  Output o;
  describe_certificate(o.table, cert);
  std::string csv = "m,constructive_size,exact_size,ratio\n";
  for (const auto& row : table) {
    std::ostringstream ratio;
    if (auto q = row.ratio()) ratio << std::setprecision(6) << *q;
    std::string exact = row.exact_size ? std::to_string(*row.exact_size) : "-";
    std::string line = "constructive " + std::to_string(row.constructed_size) + ", exact " + exact;
    if (row.pruned_size) line += ", pruned " + std::to_string(*row.pruned_size);
    if (!ratio.str().empty()) line += ", ratio " + ratio.str();
    o.table.add("X^" + std::to_string(row.m), line);
    csv += std::to_string(row.m) + "," + std::to_string(row.constructed_size) + "," +
           (row.exact_size ? std::to_string(*row.exact_size) : "") + "," + ratio.str() + "\n";
  }
  for (std::size_t i = 0; i < ms.size(); ++i)
    o.table.add(std::to_string(i + 1) + "(X^{<=" + std::to_string(i + 1) + "}) translates",
                ms[i].size());
  o.csv = csv;
  o.doc = fact21_document(cert, claim2, ms, table);
  return o;
}

Output cmd_k11(const CommandConfig& c) {
  auto r = require_ring(c);
  auto x = require_set(c, r);
  auto cert = approx_constant(x, ApproxMode::ring, c.exact, c.limits());
  auto w = k11_cover(cert, c.limits());
  Output o;
  describe_certificate(o.table, cert);
  describe_witness(o.table, "4X+X*4X ", w);
  o.table.add("K^11", saturating_pow(cert.k, 11));
  o.doc = k11_document(cert, w);
  return o;
}

Output cmd_classify(const CommandConfig& c) {
  auto r = require_ring(c);
  auto x = require_set(c, r);
  Output o;
  o.table.add("ring", r->dsl());
  o.table.add("|X|", x.size());
  if (c.check == "pos-char") {
    SearchOptions opts;
    opts.exhaustive_limit = c.exhaustive_limit;
    opts.exact = c.exact;
    opts.limits = c.limits();
    auto res = pos_char_search(x, opts);
    o.table.add("|core|", res.core.size());
    o.table.add("found", res.found.has_value());
    if (res.found) o.table.add("|S|", res.found->size());
    o.table.add("commensurability", res.commensurability);
    o.table.add("strategy", to_string(res.strategy_used));
    o.table.add("exhaustive", res.exhaustive);
    o.table.add("candidates", res.candidates);
    o.doc = search_document(x, res);
    o.code = res.found ? 0 : 4;
    return o;
  }
  ClassifyOptions opts;
  opts.small_threshold = c.small_threshold;
  opts.exact = c.exact;
  opts.weak_hypothesis = c.weak_hypothesis;
  opts.seed = c.seed.value_or(0);
  opts.limits = c.limits();
  auto rep = nzd_classify(x, opts);
  o.table.add("K", rep.k);
  o.table.add("|core|", rep.core.size());
  o.table.add("core is a subring", rep.core_subring.ok);
  o.table.add("commensurability", rep.commensurability_to_x);
  o.table.add("K^11", rep.k11_bound);
  o.table.add("small threshold", rep.small_threshold);
  o.table.add("hypothesis", rep.hypothesis.known     ? "known domain"
                            : rep.hypothesis.sampled ? "sampled"
                                                     : "exhaustive");
  o.table.add("verdict", to_string(rep.verdict));
  o.doc = classification_document(rep);
  o.code = rep.verdict == Verdict::counterexample_candidate ? 4 : 0;
  return o;
}

Output cmd_model(const CommandConfig& c) {
  auto r = require_ring(c);
  auto x = require_set(c, r);
  auto ideal = parse_set_literal(r, c.ideal);
  ModelOptions opts;
  opts.seed = c.seed.value_or(0);
  opts.limits = c.limits();
  auto rep = finite_model_check(x, ideal, opts);
  Output o;
  o.table.add("|<X>|", rep.generated.size());
  o.table.add("ideal in X_m for m", rep.m);
  o.table.add("|quotient|", rep.quotient_size);
  o.table.add("clause i", rep.clause_i);
  o.table.add("clause ii", rep.clause_ii);
  o.table.add("genericity constant", rep.max_genericity);
  o.table.add("neighbourhoods tested", std::to_string(rep.subsets_tested) +
                                           (rep.all_subsets ? " (all)" : " (sampled)"));
  o.table.add("clause iii", rep.clause_iii);
  o.table.add("passed", rep.passed());
  o.doc = model_document(rep, opts);
  o.code = rep.passed() ? 0 : 4;
  return o;
}

Output cmd_gallery(const CommandConfig& c) {
  RingHandle ring = c.ring.empty() ? nullptr : parse_ring(c.ring);
  auto need = [](const std::optional<std::int64_t>& v, const char* flag) {
    if (!v) throw Error(ErrorKind::precondition, std::string(flag) + " is required");
    return *v;
  };
  std::int64_t param = 0;
  auto g = [&] {
    if (c.gallery == "y-set") return gallery_y_set(param = need(c.p, "--p"));
    if (c.gallery == "linear-polys") return gallery_linear_polys(param = need(c.p, "--p"), ring);
    return gallery_interval(param = need(c.n, "--n"), ring);
  }();
  Output o;
  o.table.add("name", g.name);
  o.table.add("ring", g.set.ring()->dsl());
  o.table.add("size", g.set.size());
  o.table.add("elements", g.set.render());
  for (const auto& [k, v] : g.properties) o.table.add(k, v);
  o.doc = gallery_document(g, c.gallery, param);
  return o;
}

Output cmd_sweep(const CommandConfig& c) {
  auto spec = read_sweep_spec(c.config);
  auto rep = run_sweep(spec, c.seed, c.jobs, c.limits());
  Output o;
  std::map<std::string, std::size_t> verdicts;
  for (const auto& row : rep.rows) ++verdicts[row.verdict];
  o.table.add("rows", rep.rows.size());
  o.table.add("seed", rep.seed);
  for (const auto& [v, n] : verdicts) o.table.add("verdict " + v, n);
  for (const auto& [key, v] : rep.empirical_c)
    o.table.add("empirical C(K=" + std::to_string(key.first) + ", char " +
                    std::to_string(key.second) + ")",
                v);
  for (const auto& [k, v] : rep.empirical_n) o.table.add("empirical N(" + std::to_string(k) + ")", v);
  for (const auto& t : rep.sensitivity)
    o.table.add("threshold " + std::to_string(t.threshold),
                std::to_string(t.small) + " small, " + std::to_string(t.structured) +
                    " structured, " + std::to_string(t.candidates) + " candidates");
  o.table.add("violation", rep.violation);
  o.csv = sweep_csv(rep);
  o.doc = sweep_document(rep);
  o.code = rep.violation ? 4 : 0;
  return o;
}

Output cmd_verify(const CommandConfig& c) {
  Json doc;
  try {
    doc = Json::parse(read_file(c.input));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::syntax, std::string("malformed JSON: ") + e.what());
  }
  auto rep = verify_document(doc, c.limits());
  Output o;
  o.table.add("type", rep.type);
  o.table.add("checks", rep.checked.size());
  o.table.add("failures", rep.failures.size());
  for (const auto& f : rep.failures) o.table.add("failed", f);
  o.table.add("ok", rep.ok);
  o.doc = {{"schema_version", kSchemaVersion},
           {"type", "verification"},
           {"document_type", rep.type},
           {"ok", rep.ok},
           {"checked", rep.checked},
           {"failures", rep.failures}};
  o.code = rep.ok ? 0 : 4;
  return o;
}

Output dispatch(const CommandConfig& c) {
  const auto& s = c.subcommand;
  if (s == "approx") return cmd_approx(c);
  if (s == "growth") return cmd_growth(c);
  if (s == "cover") return cmd_cover(c);
  if (s == "fact21") return cmd_fact21(c);
  if (s == "k11") return cmd_k11(c);
  if (s == "classify") return cmd_classify(c);
  if (s == "model") return cmd_model(c);
  if (s == "gallery") return cmd_gallery(c);
  if (s == "sweep") return cmd_sweep(c);
  if (s == "verify") return cmd_verify(c);
  throw Error(ErrorKind::precondition, "unknown subcommand '" + s + "'");
}

}  // namespace

Limits CommandConfig::limits() const {
  Limits l;
  l.node_limit = node_limit;
  l.cardinality_cap = cardinality_cap;
  l.closure_budget = closure_budget;
  return l;
}

ParseOutcome parse_command(const std::vector<std::string>& args) {
  CLI::App app{"Approximate subring experiments", "apx"};
  app.require_subcommand(1);
  CommandConfig c;
  bool greedy = false, exact = false, json = false, csv = false;
  for (const auto& info : kSubcommands) {
    auto* sub = app.add_subcommand(info.name, info.help);
    add_options(sub, info.groups, c, greedy, exact, json, csv);
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  ParseOutcome out;
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.message = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg, sink;
    out.exit_code = app.exit(e, sink, msg) == 0 ? 0 : 2;
    out.message = msg.str() + sink.str();
    if (out.message.empty()) out.message = e.what();
    return out;
  }
  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  c.exact = !greedy;
  c.format = json ? Format::json : csv ? Format::csv : Format::table;
  out.config = c;
  return out;
}

std::vector<std::string> to_args(const CommandConfig& c) {
  const CommandConfig d;
  std::vector<std::string> a{c.subcommand};
  const auto* info = find_subcommand(c.subcommand);
  const unsigned g = info ? info->groups : 0;
  auto flag = [&](const char* name, const std::string& value) {
    a.push_back(name);
    a.push_back(value);
  };
  if (!c.gallery.empty()) a.push_back(c.gallery);
  if (!c.ring.empty()) flag("--ring", c.ring);
  if (!c.set.empty()) flag("--set", c.set);
  if (!c.set_file.empty()) flag("--set-file", c.set_file);
  if (!c.base.empty()) flag("--base", c.base);
  if (!c.ideal.empty()) flag("--ideal", c.ideal);
  if (c.p) flag("--p", std::to_string(*c.p));
  if (c.n) flag("--n", std::to_string(*c.n));
  if (c.mode != d.mode) flag("--mode", c.mode);
  if ((g & kSolver) && !c.exact) a.push_back("--greedy");
  if (c.covering) a.push_back("--covering");
  if (c.m != d.m) flag("--m", std::to_string(c.m));
  if (c.pruned) a.push_back("--pruned");
  if (c.check != d.check) flag("--check", c.check);
  if (c.small_threshold) flag("--small-threshold", std::to_string(*c.small_threshold));
  if (c.weak_hypothesis) a.push_back("--weak-hypothesis");
  if (c.exhaustive_limit != d.exhaustive_limit)
    flag("--exhaustive-limit", std::to_string(c.exhaustive_limit));
  if (!c.config.empty()) flag("--config", c.config);
  if (!c.input.empty()) flag("--input", c.input);
  if (c.seed) flag("--seed", std::to_string(*c.seed));
  if (c.jobs != d.jobs) flag("--jobs", std::to_string(c.jobs));
  if (c.node_limit != d.node_limit) flag("--node-limit", std::to_string(c.node_limit));
  if (c.cardinality_cap != d.cardinality_cap)
    flag("--cardinality-cap", std::to_string(c.cardinality_cap));
  if (c.closure_budget != d.closure_budget)
    flag("--closure-budget", std::to_string(c.closure_budget));
  if (c.format == Format::json) a.push_back("--json");
  if (c.format == Format::csv) a.push_back("--csv");
  if (!c.output.empty()) flag("--output", c.output);
  return a;
}

std::string to_flag_string(const CommandConfig& c) {
  std::string out;
  for (const auto& a : to_args(c)) {
    if (!out.empty()) out += ' ';
    out += shell_quote(a);
  }
  return out;
}

int run_command(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  try {
    auto o = dispatch(c);
    std::string text;
    switch (c.format) {
      case Format::json: text = o.doc.dump(2) + "\n"; break;
      case Format::csv: text = o.csv ? *o.csv : o.table.csv(); break;
      case Format::table: text = o.table.render(); break;
    }
    if (c.subcommand == "sweep" && !c.output.empty()) {
      write_file(c.output + ".csv", *o.csv);
      write_file(c.output + ".json", o.doc.dump(2) + "\n");
      out << text;
    } else if (!c.output.empty()) {
      write_file(c.output, text);
    } else {
      out << text;
    }
    return o.code;
  } catch (const Error& e) {
    err << "apx " << c.subcommand << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "apx " << c.subcommand << ": malformed document: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "apx " << c.subcommand << ": internal error: " << e.what() << '\n';
    return 1;
  }
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto parsed = parse_command(args);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  return run_command(*parsed.config, std::cout, std::cerr);
}

}  // namespace apx::cli
