#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "apx/finite_set.hpp"

namespace apx::cli {

enum class Format { table, json, csv };

struct CommandConfig {
  std::string subcommand;
  std::string ring;
  std::string set;
  std::string set_file;
  std::string base;
  std::string ideal;
  std::string gallery;
  std::optional<std::int64_t> p;
  std::optional<std::int64_t> n;
  std::string mode = "ring";
  bool exact = true;
  bool covering = false;
  std::size_t m = 3;
  bool pruned = false;
  std::string check = "nzd";
  std::optional<std::size_t> small_threshold;
  bool weak_hypothesis = false;
  std::size_t exhaustive_limit = 32;
  std::string config;
  std::string input;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  Format format = Format::table;
  std::string output;
  std::uint64_t node_limit = Limits{}.node_limit;
  std::uint64_t cardinality_cap = Limits{}.cardinality_cap;
  std::uint64_t closure_budget = Limits{}.closure_budget;

  Limits limits() const;

  friend bool operator==(const CommandConfig&, const CommandConfig&) = default;
};

struct ParseOutcome {
  std::optional<CommandConfig> config;
  int exit_code = 0;
  std::string message;  // help text or parse error
};

// argv without the program name.
ParseOutcome parse_command(const std::vector<std::string>& args);
// Canonical arguments: subcommand, positionals, then the non-default flags
// in a fixed order. parse_command(to_args(c)) reproduces c.
std::vector<std::string> to_args(const CommandConfig& c);
// to_args joined with POSIX shell quoting.
std::string to_flag_string(const CommandConfig& c);

// Runs one subcommand. Results go to `out` (or --output), diagnostics to
// `err`. Returns the process exit code.
int run_command(const CommandConfig& c, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace apx::cli
