#pragma once

// Parameter sweeps over families of symmetric sets.
//
// Config format: one `key = value` per line, `#` comments.
//
//   version           1 (required)
//   rings             ring DSL strings separated by `;`
//   generator         symmetric-exhaustive | interval | linear | random-symmetric
//   max_size          largest |X| for symmetric-exhaustive
//   contains_zero     true | false | any
//   n_min, n_max      interval radius range
//   count, size       random-symmetric: sets per ring and target size
//   k_max             skip instances whose constant exceeds this
//   check             nzd | pos-char
//   small_threshold   fixed threshold (default 4k^2 per instance)
//   thresholds        comma-separated thresholds for the sensitivity table
//   seed              required unless given on the command line
//   exhaustive_limit  largest core searched exhaustively by pos-char

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apx/classify.hpp"

namespace apx {

enum class Generator { symmetric_exhaustive, interval, linear, random_symmetric };
enum class SweepCheck { nzd, pos_char };
enum class ZeroPolicy { required, excluded, any };

struct SweepSpec {
  int version = 1;
  std::vector<std::string> rings;
  Generator generator = Generator::symmetric_exhaustive;
  std::size_t max_size = 9;
  ZeroPolicy contains_zero = ZeroPolicy::required;
  std::int64_t n_min = 1;
  std::int64_t n_max = 4;
  std::size_t count = 10;
  std::size_t size = 5;
  std::optional<std::size_t> k_max;
  SweepCheck check = SweepCheck::nzd;
  std::optional<std::size_t> small_threshold;
  std::vector<std::size_t> thresholds;
  std::optional<std::uint64_t> seed;
  std::size_t exhaustive_limit = 32;
};

SweepSpec parse_sweep_spec(std::string_view text);
SweepSpec read_sweep_spec(const std::string& path);
// Canonical config text; parse_sweep_spec(to_config(s)) reproduces s.
std::string to_config(const SweepSpec& spec);

struct SweepInstance {
  std::size_t id = 0;
  RingHandle ring;
  std::string params;
  std::vector<Element> elements;
};

// Instances in id order. Random generation consumes `seed` sequentially.
std::vector<SweepInstance> sweep_instances(const SweepSpec& spec, std::uint64_t seed,
                                           const Limits& limits = {});

struct SweepRow {
  std::size_t id = 0;
  std::string ring;
  std::string params;
  std::size_t size = 0;
  std::optional<std::size_t> k;
  bool k_optimal = false;
  std::uint64_t characteristic = 0;
  std::optional<std::uint64_t> ring_size;
  // small | structured | counterexample-candidate | found | not-found |
  // filtered | error
  std::string verdict;
  std::optional<std::size_t> core_size;
  std::optional<bool> core_is_subring;
  std::optional<std::size_t> commensurability;
  std::uint64_t k11_bound = 0;
  bool structure_ok = false;  // core is a subring within the K^11 bound
  std::optional<std::size_t> subring_size;
  std::string strategy;
  bool exhaustive = false;
  std::string error;
  std::optional<ClassificationReport> classification;
  std::optional<SubringSearchResult> search;
};

struct ThresholdSensitivity {
  std::size_t threshold = 0;
  std::size_t small = 0;
  std::size_t structured = 0;
  std::size_t candidates = 0;
};

struct SweepReport {
  SweepSpec spec;
  std::uint64_t seed = 0;
  std::vector<SweepRow> rows;
  // Max commensurability per (K, characteristic).
  std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> empirical_c;
  // Max |X| among classified, non-structured rows per K.
  std::map<std::size_t, std::size_t> empirical_n;
  std::vector<ThresholdSensitivity> sensitivity;
  bool violation = false;
};

// Throws Error{precondition} when neither the config nor `seed` provides one.
SweepReport run_sweep(const SweepSpec& spec, std::optional<std::uint64_t> seed,
                      int jobs = 1, const Limits& limits = {});

std::string sweep_csv(const SweepReport& report);

}  // namespace apx
