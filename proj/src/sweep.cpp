#include "apx/sweep.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "apx/constructive.hpp"
#include "apx/error.hpp"
#include "apx/setalg.hpp"
#include "text.hpp"

namespace apx {

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::syntax, "sweep config line " + std::to_string(line) + ": " + what);
}

std::string generator_name(Generator g) {
  switch (g) {
    case Generator::symmetric_exhaustive: return "symmetric-exhaustive";
    case Generator::interval: return "interval";
    case Generator::linear: return "linear";
    case Generator::random_symmetric: return "random-symmetric";
  }
  return "?";
}

std::string zero_name(ZeroPolicy z) {
  switch (z) {
    case ZeroPolicy::required: return "true";
    case ZeroPolicy::excluded: return "false";
    case ZeroPolicy::any: return "any";
  }
  return "?";
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && (s[i] == '(' || s[i] == '[')) ++depth;
    if (i < s.size() && (s[i] == ')' || s[i] == ']') && depth) --depth;
    if (i == s.size() || (s[i] == sep && depth == 0)) {
      auto part = text::trim(s.substr(start, i - start));
      if (!part.empty()) out.emplace_back(part);
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

SweepSpec parse_sweep_spec(std::string_view text) {
  SweepSpec spec;
  bool have_version = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  auto number = [&](std::string_view v) -> std::int64_t {
    try {
      return text::parse_integer(v);
    } catch (const Error& e) {
      bad_line(line_no, e.what());
    }
  };
  auto natural = [&](std::string_view v) -> std::size_t {
    auto n = number(v);
    if (n < 0) bad_line(line_no, "expected a nonnegative integer");
    return static_cast<std::size_t>(n);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) bad_line(line_no, "expected key = value");
    std::string key(text::trim(line.substr(0, eq)));
    std::string_view value = text::trim(line.substr(eq + 1));
    if (key == "version") {
      spec.version = static_cast<int>(number(value));
      if (spec.version != 1) bad_line(line_no, "unsupported version");
      have_version = true;
    } else if (key == "rings") {
      spec.rings = split(value, ';');
    } else if (key == "generator") {
      if (value == "symmetric-exhaustive") spec.generator = Generator::symmetric_exhaustive;
      else if (value == "interval") spec.generator = Generator::interval;
      else if (value == "linear") spec.generator = Generator::linear;
      else if (value == "random-symmetric") spec.generator = Generator::random_symmetric;
      else bad_line(line_no, "unknown generator '" + std::string(value) + "'");
    } else if (key == "max_size") {
      spec.max_size = natural(value);
    } else if (key == "contains_zero") {
      if (value == "true") spec.contains_zero = ZeroPolicy::required;
      else if (value == "false") spec.contains_zero = ZeroPolicy::excluded;
      else if (value == "any") spec.contains_zero = ZeroPolicy::any;
      else bad_line(line_no, "contains_zero must be true, false or any");
    } else if (key == "n_min") {
      spec.n_min = number(value);
    } else if (key == "n_max") {
      spec.n_max = number(value);
    } else if (key == "count") {
      spec.count = natural(value);
    } else if (key == "size") {
      spec.size = natural(value);
    } else if (key == "k_max") {
      spec.k_max = natural(value);
    } else if (key == "check") {
      if (value == "nzd") spec.check = SweepCheck::nzd;
      else if (value == "pos-char") spec.check = SweepCheck::pos_char;
      else bad_line(line_no, "check must be nzd or pos-char");
    } else if (key == "small_threshold") {
      spec.small_threshold = natural(value);
    } else if (key == "thresholds") {
      spec.thresholds.clear();
      for (const auto& t : split(value, ',')) spec.thresholds.push_back(natural(t));
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(number(value));
    } else if (key == "exhaustive_limit") {
      spec.exhaustive_limit = natural(value);
    } else {
      bad_line(line_no, "unknown key '" + key + "'");
    }
  }
  if (!have_version) throw Error(ErrorKind::syntax, "sweep config has no version line");
  return spec;
}

SweepSpec read_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open sweep config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_spec(buf.str());
}

std::string to_config(const SweepSpec& s) {
  std::ostringstream out;
  out << "version = " << s.version << "\n";
  out << "rings = ";
  for (std::size_t i = 0; i < s.rings.size(); ++i) out << (i ? "; " : "") << s.rings[i];
  out << "\n";
  out << "generator = " << generator_name(s.generator) << "\n";
  out << "max_size = " << s.max_size << "\n";
  out << "contains_zero = " << zero_name(s.contains_zero) << "\n";
  out << "n_min = " << s.n_min << "\n";
  out << "n_max = " << s.n_max << "\n";
  out << "count = " << s.count << "\n";
  out << "size = " << s.size << "\n";
  if (s.k_max) out << "k_max = " << *s.k_max << "\n";
  out << "check = " << (s.check == SweepCheck::nzd ? "nzd" : "pos-char") << "\n";
  if (s.small_threshold) out << "small_threshold = " << *s.small_threshold << "\n";
  if (!s.thresholds.empty()) {
    out << "thresholds = ";
    for (std::size_t i = 0; i < s.thresholds.size(); ++i)
      out << (i ? "," : "") << s.thresholds[i];
    out << "\n";
  }
  if (s.seed) out << "seed = " << *s.seed << "\n";
  out << "exhaustive_limit = " << s.exhaustive_limit << "\n";
  return out.str();
}

namespace {

// Negation orbits {x, -x} of the nonzero elements, in index order.
std::vector<std::vector<Element>> negation_orbits(const Ring& r) {
  std::vector<std::vector<Element>> orbits;
  for (Element x : enumerate(r, std::uint64_t{1} << 16)) {
    if (x == r.zero()) continue;
    Element y = r.neg(x);
    if (y < x) continue;
    orbits.push_back(y == x ? std::vector<Element>{x} : std::vector<Element>{x, y});
  }
  return orbits;
}

void add_symmetric_exhaustive(const SweepSpec& spec, const RingHandle& ring,
                              std::vector<SweepInstance>& out) {
  const auto orbits = negation_orbits(*ring);
  std::vector<bool> zero_options;
  if (spec.contains_zero != ZeroPolicy::excluded) zero_options.push_back(true);
  if (spec.contains_zero != ZeroPolicy::required) zero_options.push_back(false);
  for (bool zero : zero_options) {
    std::vector<std::size_t> chosen;
    auto emit = [&]() {
      std::vector<Element> e;
      if (zero) e.push_back(ring->zero());
      std::string params = "orbits=";
      for (auto i : chosen) {
        e.insert(e.end(), orbits[i].begin(), orbits[i].end());
        params += ring->render(orbits[i][0]) + "|";
      }
      if (e.empty()) return;
      if (!chosen.empty()) params.pop_back();
      params += zero ? " zero" : "";
      out.push_back({0, ring, params, std::move(e)});
      if (out.size() > 1'000'000)
        throw Error(ErrorKind::budget_exceeded, "sweep family has more than 10^6 instances");
    };
    // Depth-first over orbit index sets in lexicographic order.
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t next, std::size_t size) {
      emit();
      for (std::size_t i = next; i < orbits.size(); ++i) {
        if (size + orbits[i].size() > spec.max_size) continue;
        chosen.push_back(i);
        dfs(i + 1, size + orbits[i].size());
        chosen.pop_back();
      }
    };
    dfs(0, zero ? 1 : 0);
  }
}

void add_random_symmetric(const SweepSpec& spec, const RingHandle& ring,
                          std::mt19937_64& rng, std::vector<SweepInstance>& out) {
  const auto orbits = negation_orbits(*ring);
  for (std::size_t c = 0; c < spec.count; ++c) {
    bool zero = spec.contains_zero == ZeroPolicy::required ||
                (spec.contains_zero == ZeroPolicy::any && (rng() & 1));
    std::vector<std::size_t> order(orbits.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Fisher-Yates with the sweep generator so the draw is library-independent.
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    std::vector<Element> e;
    if (zero) e.push_back(ring->zero());
    for (std::size_t i : order) {
      if (e.size() >= spec.size) break;
      e.insert(e.end(), orbits[i].begin(), orbits[i].end());
    }
    if (e.empty()) continue;
    out.push_back({0, ring, "draw=" + std::to_string(c), std::move(e)});
  }
}

}  // namespace

std::vector<SweepInstance> sweep_instances(const SweepSpec& spec, std::uint64_t seed,
                                           const Limits&) {
  std::vector<SweepInstance> out;
  std::mt19937_64 rng(seed);
  for (const auto& dsl : spec.rings) {
    RingHandle ring = parse_ring(dsl);
    switch (spec.generator) {
      case Generator::symmetric_exhaustive:
        add_symmetric_exhaustive(spec, ring, out);
        break;
      case Generator::random_symmetric:
        add_random_symmetric(spec, ring, rng, out);
        break;
      case Generator::interval:
        for (std::int64_t n = std::max<std::int64_t>(spec.n_min, 1); n <= spec.n_max; ++n) {
          auto g = gallery_interval(n, ring);
          out.push_back({0, ring, "N=" + std::to_string(n), {g.set.begin(), g.set.end()}});
        }
        break;
      case Generator::linear: {
        auto g = gallery_linear_polys(static_cast<std::int64_t>(ring->characteristic()), ring);
        out.push_back({0, ring, "linear", {g.set.begin(), g.set.end()}});
        break;
      }
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
  return out;
}

namespace {

struct RingInfo {
  std::optional<ZeroDivisorCheck> hypothesis;
  std::string hypothesis_error;
};

void evaluate(const SweepSpec& spec, const SweepInstance& inst, const RingInfo& info,
              std::uint64_t seed, const Limits& limits, SweepRow& row) {
  const Ring& r = *inst.ring;
  row.id = inst.id;
  row.ring = r.dsl();
  row.params = inst.params;
  row.characteristic = r.characteristic();
  row.ring_size = r.cardinality();
  try {
    FiniteSet x(inst.ring, inst.elements, limits);
    row.size = x.size();
    auto cert = approx_constant(x, ApproxMode::ring, true, limits);
    row.k = cert.k;
    row.k_optimal = cert.minimal;
    row.k11_bound = saturating_pow(cert.k, 11);
    if (spec.k_max && cert.k > *spec.k_max) {
      row.verdict = "filtered";
      return;
    }
    if (spec.check == SweepCheck::nzd) {
      if (!info.hypothesis) throw Error(ErrorKind::precondition, info.hypothesis_error);
      if (!info.hypothesis->domain)
        throw Error(ErrorKind::zero_divisor_found, info.hypothesis_error);
      ClassifyOptions opts;
      opts.small_threshold = spec.small_threshold;
      opts.hypothesis = info.hypothesis;
      opts.seed = seed;
      opts.limits = limits;
      auto rep = nzd_classify(x, opts);
      row.verdict = to_string(rep.verdict);
      row.core_size = rep.core.size();
      row.core_is_subring = rep.core_subring.ok;
      row.commensurability = rep.commensurability_to_x;
      row.structure_ok = rep.core_subring.ok && rep.commensurability_to_x &&
                         *rep.commensurability_to_x <= rep.k11_bound;
      row.classification = std::move(rep);
    } else {
      SearchOptions opts;
      opts.exhaustive_limit = spec.exhaustive_limit;
      opts.limits = limits;
      auto res = pos_char_search(x, opts);
      row.core_size = res.core.size();
      row.verdict = res.found ? "found" : "not-found";
      row.commensurability = res.commensurability;
      if (res.found) row.subring_size = res.found->size();
      row.strategy = to_string(res.strategy_used);
      row.exhaustive = res.exhaustive;
      row.search = std::move(res);
    }
  } catch (const Error& e) {
    row.verdict = "error";
    row.error = std::string(to_string(e.kind())) + ": " + e.what();
  }
}

}  // namespace

SweepReport run_sweep(const SweepSpec& spec, std::optional<std::uint64_t> seed, int jobs,
                      const Limits& limits) {
  if (!seed) seed = spec.seed;
  if (!seed) throw Error(ErrorKind::precondition, "sweep needs a seed (config key or --seed)");
  SweepReport report{spec, *seed};
  auto instances = sweep_instances(spec, *seed, limits);

  std::map<std::string, RingInfo> infos;
  if (spec.check == SweepCheck::nzd) {
    for (const auto& inst : instances) {
      auto [it, fresh] = infos.try_emplace(inst.ring->dsl());
      if (!fresh) continue;
      try {
        it->second.hypothesis = check_zero_divisors(*inst.ring, *seed);
        if (!it->second.hypothesis->domain) {
          const auto& w = *it->second.hypothesis->witness;
          it->second.hypothesis_error = inst.ring->dsl() + " has zero divisors: (" +
                                        inst.ring->render(w.first) + ", " +
                                        inst.ring->render(w.second) + ")";
        }
      } catch (const Error& e) {
        it->second.hypothesis_error = e.what();
      }
    }
  }

  report.rows.resize(instances.size());
  std::exception_ptr failure;
  jobs = std::max(jobs, 1);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::size_t i = 0; i < instances.size(); ++i) {
    try {
      static const RingInfo none;
      const RingInfo& info =
          spec.check == SweepCheck::nzd ? infos.at(instances[i].ring->dsl()) : none;
      evaluate(spec, instances[i], info, *seed, limits, report.rows[i]);
    } catch (...) {
#pragma omp critical(apx_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& row : report.rows) {
    if (row.verdict == "error" || row.verdict == "filtered" || !row.k) continue;
    if (row.commensurability) {
      auto& cell = report.empirical_c[{*row.k, row.characteristic}];
      cell = std::max(cell, *row.commensurability);
    }
    if (spec.check == SweepCheck::nzd && row.verdict != "structured") {
      auto& n = report.empirical_n[*row.k];
      n = std::max(n, row.size);
    }
    if (row.verdict == "counterexample-candidate" || row.verdict == "not-found")
      report.violation = true;
  }
  for (std::size_t t : spec.thresholds) {
    ThresholdSensitivity s{t};
    for (const auto& row : report.rows) {
      if (!row.classification) continue;
      if (row.size < t) ++s.small;
      else if (row.structure_ok) ++s.structured;
      else ++s.candidates;
    }
    report.sensitivity.push_back(s);
  }
  return report;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  return v ? std::to_string(*v) : "";
}

}  // namespace

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "id,ring,params,size,k,k_optimal,characteristic,ring_size,verdict,core_size,"
         "core_is_subring,commensurability,k11_bound,subring_size,strategy,exhaustive,error\n";
  for (const auto& r : report.rows) {
    out << r.id << ',' << csv_field(r.ring) << ',' << csv_field(r.params) << ',' << r.size
        << ',' << opt(r.k) << ',' << (r.k ? (r.k_optimal ? "true" : "false") : "") << ','
        << r.characteristic << ',' << opt(r.ring_size) << ',' << r.verdict << ','
        << opt(r.core_size) << ','
        << (r.core_is_subring ? (*r.core_is_subring ? "true" : "false") : "") << ','
        << opt(r.commensurability) << ',' << (r.k ? std::to_string(r.k11_bound) : "") << ','
        << opt(r.subring_size) << ',' << r.strategy << ','
        << (r.search ? (r.exhaustive ? "true" : "false") : "") << ',' << csv_field(r.error)
        << '\n';
  }
  return out.str();
}

}  // namespace apx
