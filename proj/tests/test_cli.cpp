#include <cstdio>
#include <fstream>
#include <sstream>

#include "apx/report.hpp"
#include "command.hpp"
#include "helpers.hpp"

using namespace apx;
using namespace apx::cli;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  auto parsed = parse_command(args);
  if (!parsed.config) return {parsed.exit_code, parsed.message, ""};
  std::ostringstream out, err;
  int code = run_command(*parsed.config, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return std::string(P_tmpdir) + "/apx_cli_test_" + name;
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("command configs round-trip to the canonical flag string") {
  const std::vector<std::vector<std::string>> cases = {
      {"approx", "--ring", "zmod:7", "--set", "{1,6,0}", "--exact", "--json"},
      {"approx", "--set", "{1, -1}", "--ring", "int", "--greedy", "--mode", "group"},
      {"growth", "--ring", "int", "--set", "{-1,0,1}", "--n", "2", "--covering", "--csv"},
      {"cover", "--ring", "zmod:9", "--set", "{0,1,2,3}", "--base", "{0,1}", "--node-limit", "50"},
      {"fact21", "--ring", "int", "--set", "{-1,0,1}", "--m", "4", "--pruned"},
      {"classify", "--ring", "zmod:9", "--set", "{0,3,6}", "--check", "pos-char",
       "--exhaustive-limit", "64", "--seed", "3"},
      {"classify", "--ring", "zmod:7", "--set", "{6,0,1}", "--small-threshold", "3",
       "--weak-hypothesis"},
      {"model", "--ring", "zmod:9", "--set", "{0,1,8}", "--ideal", "{0,3,6}", "--output", "m.json"},
      {"gallery", "interval", "--n", "3", "--ring", "zmod:11"},
      {"sweep", "--config", "s.cfg", "--seed", "9", "--jobs", "4", "--closure-budget", "4096"},
      {"verify", "--input", "doc.json"},
  };
  for (const auto& args : cases) {
    auto first = parse_command(args);
    REQUIRE(first.config);
    auto canonical = to_args(*first.config);
    auto second = parse_command(canonical);
    REQUIRE(second.config);
    CHECK(*second.config == *first.config);
    CHECK(to_args(*second.config) == canonical);
  }
  auto c = parse_command(cases[1]).config;
  CHECK(to_flag_string(*c) == "approx --ring int --set '{1, -1}' --mode group --greedy");
}

TEST_CASE("parse errors exit with 2") {
  CHECK(parse_command({}).exit_code == 2);
  CHECK(parse_command({"approx", "--bogus"}).exit_code == 2);
  CHECK(parse_command({"approx", "--exact", "--greedy"}).exit_code == 2);
  CHECK(parse_command({"approx", "--pruned"}).exit_code == 2);
  CHECK(parse_command({"gallery", "circle"}).exit_code == 2);
  CHECK(parse_command({"sweep"}).exit_code == 2);
  auto help = parse_command({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.message.find("approx") != std::string::npos);
}

TEST_CASE("approx examples") {
  auto r = run({"approx", "--ring", "zmod:7", "--set", "{1,6,0}", "--exact", "--json"});
  CHECK(r.code == 0);
  auto doc = Json::parse(r.out);
  CHECK(doc["certificate"]["k"] == 2);
  CHECK(run({"approx", "--ring", "int", "--set", "{0}"}).out.find("K               1") !=
        std::string::npos);
  auto bad = run({"approx", "--ring", "int", "--set", "{1}"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("not-symmetric") != std::string::npos);
  CHECK(run({"approx", "--ring", "zmod:1"}).code == 2);
  CHECK(run({"approx", "--ring", "int", "--set", "{-3..3}"}).code == 2);
}

TEST_CASE("budget errors exit with 3") {
  auto r = run({"growth", "--ring", "int", "--set", "{-9,-8,-7,-6,-5,-4,-3,-2,-1,0,1,2,3,4,5,6,7,8,9}",
                "--n", "3", "--cardinality-cap", "100"});
  CHECK(r.code == 3);
}

TEST_CASE("k11 and gallery examples") {
  auto k = run({"k11", "--ring", "int", "--set", "{-1,0,1}", "--json"});
  CHECK(k.code == 0);
  auto doc = Json::parse(k.out);
  CHECK(doc["witness"]["size"].get<int>() <= 2048);
  CHECK(verify_document(doc).ok);
  auto g = run({"gallery", "y-set", "--p", "3"});
  CHECK(g.code == 0);
  CHECK(g.out.find("size       7") != std::string::npos);
  CHECK(run({"gallery", "y-set"}).code == 2);
}

TEST_CASE("sweep writes CSV and JSON and needs a seed") {
  auto cfg = temp_path("empty.cfg");
  write(cfg, "version = 1\n");
  CHECK(run({"sweep", "--config", cfg}).code == 2);
  auto prefix = temp_path("empty_out");
  auto r = run({"sweep", "--config", cfg, "--seed", "1", "--output", prefix});
  CHECK(r.code == 0);
  CHECK(slurp(prefix + ".csv").rfind("id,ring,", 0) == 0);
  CHECK(Json::parse(slurp(prefix + ".json"))["rows"].empty());

  auto full = temp_path("small.cfg");
  write(full, "version = 1\nrings = zmod:5;zmod:7\ngenerator = random-symmetric\ncount = 6\nsize = 3\n");
  auto a = run({"sweep", "--config", full, "--seed", "5", "--csv"});
  auto b = run({"sweep", "--config", full, "--seed", "5", "--csv", "--jobs", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run({"sweep", "--config", temp_path("missing.cfg"), "--seed", "1"}).code == 1);
}

TEST_CASE("every document the CLI writes re-verifies") {
  const std::vector<std::vector<std::string>> cmds = {
      {"approx", "--ring", "polyquo:2:t^2", "--set", "{0,1,t}"},
      {"growth", "--ring", "zmod:12", "--set", "{0,1,11}", "--n", "2", "--covering"},
      {"cover", "--ring", "zmod:10", "--set", "{0,1,2,3,4,5}", "--base", "{0,1}"},
      {"fact21", "--ring", "zmod:9", "--set", "{0,1,8}", "--m", "3"},
      {"k11", "--ring", "zmod:8", "--set", "{0,2,6}"},
      {"classify", "--ring", "zmod:7", "--set", "{6,0,1}", "--small-threshold", "3"},
      {"classify", "--ring", "zmod:9", "--set", "{0,1,8}", "--check", "pos-char"},
      {"model", "--ring", "zmod:9", "--set", "{0,1,8}", "--ideal", "{0,3,6}"},
      {"gallery", "linear-polys", "--p", "2"},
  };
  int i = 0;
  for (auto args : cmds) {
    auto path = temp_path("doc" + std::to_string(i++) + ".json");
    args.insert(args.end(), {"--json", "--output", path});
    auto r = run(args);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    auto v = run({"verify", "--input", path, "--json"});
    CHECK(v.code == 0);
    CHECK(Json::parse(v.out)["ok"] == true);
  }
}

TEST_CASE("verify rejects edited documents with exit 4") {
  auto path = temp_path("edit.json");
  REQUIRE(run({"cover", "--ring", "zmod:10", "--set", "{0,1,2,3}", "--base", "{0,1}", "--json",
               "--output", path})
              .code == 0);
  auto doc = Json::parse(slurp(path));
  doc["witness"]["translates"] = Json::array({"0"});
  write(path, doc.dump());
  CHECK(run({"verify", "--input", path}).code == 4);
  write(path, "{not json");
  CHECK(run({"verify", "--input", path}).code == 2);
}

TEST_CASE("counterexample-free classify and model exit codes") {
  CHECK(run({"classify", "--ring", "zmod:8", "--set", "{0,4}"}).code == 2);
  CHECK(run({"model", "--ring", "zmod:9", "--set", "{0,1,8}", "--ideal", "{0,3}"}).code == 2);
}
