#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "oracles.hpp"
#include "otscuts/cli.hpp"

using namespace otscuts;
using namespace otscuts::test;
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("otscuts_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& body) {
  fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<ordered_json> json_lines(const std::string& text) {
  std::vector<ordered_json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(ordered_json::parse(line));
  return out;
}

const std::string kRing6 = data_path("ring6.json");
const std::string kFixed = data_path("ring6_fixed.json");

}  // namespace

TEST_CASE("validate") {
  Run ok = run({"validate", kRing6});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out == "6 buses, 6 lines, connected\n");

  std::string split = write_file("split.json", R"({"buses": [{"id": "a", "demand": "0", "gen_max": "1", "gen_cost": "1"},
    {"id": "b", "demand": "0", "gen_max": "0", "gen_cost": "0"},
    {"id": "c", "demand": "0", "gen_max": "0", "gen_cost": "0"}],
    "lines": [{"from": "a", "to": "b", "reactance": "1", "capacity": "1", "switchable": true}]})");
  Run disc = run({"validate", split});
  CHECK(disc.code == kExitFailure);
  CHECK(disc.err.find("c") != std::string::npos);

  Run bad = run({"validate", write_file("bad.json", "{\"buses\": [")});
  CHECK(bad.code == kExitInput);
  CHECK(run({"validate", (scratch() / "missing.json").string()}).code == kExitInput);
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("bounds") {
  Run fixed = run({"bounds", kFixed, "--out", "-"});
  REQUIRE(fixed.code == kExitOk);
  auto doc = ordered_json::parse(fixed.out);
  CHECK(doc["global_M"] == "6");
  bool seen = false;
  for (const auto& p : doc["pairs"]) {
    if (p["m"] == "i0" && p["n"] == "i4") {
      seen = true;
      CHECK(p["bound"] == "2");
      CHECK(p["source"] == "shortest_path_active");
    }
  }
  CHECK(seen);

  Run open = run({"bounds", kRing6});
  REQUIRE(open.code == kExitOk);
  auto all = ordered_json::parse(open.out);
  CHECK(all["pairs"].size() == 15);
  for (const auto& p : all["pairs"]) CHECK(p["bound"] == "6");

  std::string path = (scratch() / "bounds.json").string();
  Run to_file = run({"bounds", kRing6, "--out", path});
  CHECK(to_file.code == kExitOk);
  CHECK(to_file.out.empty());
  CHECK(read_file(path) == open.out);
}

TEST_CASE("cuts") {
  Run one = run({"cuts", kRing6, "--point", data_path("ring6_point.json")});
  REQUIRE(one.code == kExitOk);
  auto lines = json_lines(one.out);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0]["kind"] == "cpvi");
  CHECK(lines[0]["violation"] == "1");
  CHECK(lines[0]["constant"] == "14");

  Run none = run({"cuts", kRing6, "--point", data_path("ring6_interior.json")});
  CHECK(none.code == kExitOk);
  CHECK(none.out.empty());

  Run subset = run({"cuts", kRing6, "--kind", "cvi", "--subset", "1,2,4,5"});
  REQUIRE(subset.code == kExitOk);
  auto cvi = json_lines(subset.out);
  REQUIRE(cvi.size() == 1);
  CHECK(cvi[0]["kind"] == "cvi");
  CHECK(cvi[0]["delta_S"] == "2");
  CHECK(cvi[0]["constant"] == "10");

  CHECK(run({"cuts", kRing6}).code == kExitInput);
  CHECK(run({"cuts", kRing6, "--point", data_path("ring6_point.json"), "--tolerance", "-1"}).code == kExitInput);
  CHECK(run({"cuts", kRing6, "--point", data_path("ring6_point.json"), "--kind", "cvi"}).code == kExitInput);
  CHECK(run({"cuts", kRing6, "--kind", "nope"}).code == kExitInput);
  CHECK(run({"cuts", kRing6, "--kind", "cvi", "--subset", "0,9"}).code == kExitFailure);
  CHECK(run({"cuts", kRing6, "--point", data_path("ring6_point.json"), "--tolerance", "1"}).out.empty());
  Run frac = run({"cuts", kRing6, "--point", data_path("ring6_point.json"), "--fractional-only", "1/4"});
  CHECK(frac.code == kExitOk);
  CHECK(json_lines(frac.out).size() == 1);
}

TEST_CASE("emit") {
  Run lp = run({"emit", kRing6});
  REQUIRE(lp.code == kExitOk);
  CHECK(lp.out == read_file(std::string(OTSCUTS_SOURCE_DIR) + "/tests/golden/ring6_global.lp"));
  Run cut = run({"emit", kRing6, "--cuts", data_path("ring6_cuts.jsonl"), "--out", "-"});
  CHECK(cut.out == read_file(std::string(OTSCUTS_SOURCE_DIR) + "/tests/golden/ring6_cuts.lp"));
  CHECK(cut.err.find("1 C-PVI and 1 CVI") != std::string::npos);
  Run b = run({"emit", kFixed, "--bigm", "bounds"});
  CHECK(b.out == read_file(std::string(OTSCUTS_SOURCE_DIR) + "/tests/golden/ring6_fixed_bounds.lp"));
  CHECK(run({"emit", kRing6, "--cuts", write_file("junk.jsonl", "{\"kind\": \"cpvi\"}\n")}).code != kExitOk);
  CHECK(run({"emit", kRing6, "--extended"}).code == kExitOk);
}

TEST_CASE("certify") {
  Run cap = run({"certify", kRing6});
  CHECK(cap.code == kExitCap);
  CHECK(cap.err.find("CapExceeded") != std::string::npos);

  Run projection = run({"certify", kRing6, "--max-cycle", "6", "--hull", "projection"});
  CHECK(projection.code == kExitOk);
  auto reports = ordered_json::parse(projection.out);
  CHECK(reports.size() == 15 * 5);
  for (const auto& r : reports) CHECK(r["passed"] == true);
  for (const char* claim : {"Validity", "FacetRank", "LocalIdeal", "HullEquality", "FullDimension"})
    CHECK(projection.err.find(std::string(claim) + ": PASS") != std::string::npos);

  Run cut_hull = run({"certify", kRing6, "--max-cycle", "6"});
  CHECK(cut_hull.code == kExitFailure);
  CHECK(cut_hull.err.find("HullEquality: FAIL") != std::string::npos);
  CHECK(cut_hull.err.find("FacetRank: PASS") != std::string::npos);

  std::string path = (scratch() / "strict.json").string();
  Run strict = run({"certify", kRing6, "--max-cycle", "6", "--strict-theorem2", "--report", path});
  CHECK(strict.code == kExitFailure);
  auto doc = ordered_json::parse(read_file(path));
  bool witnessed = false;
  for (const auto& r : doc)
    if (r["claim"] == "HullEquality" && r["passed"] == false) {
      REQUIRE(r["witness"].is_array());
      witnessed = true;
    }
  CHECK(witnessed);

  CHECK(run({"certify", kRing6, "--max-cycle", "0"}).code == kExitInput);
  CHECK(run({"certify", kRing6, "--hull", "projection", "--strict-theorem2"}).code == kExitInput);
}

TEST_CASE("commands are deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"bounds", kRing6}, {"bounds", kFixed}, {"cuts", kRing6, "--point", data_path("ring6_point.json")},
        {"emit", kRing6, "--cuts", data_path("ring6_cuts.jsonl")}, {"certify", kRing6, "--max-cycle", "6"}}) {
    Run a = run(args), b = run(args), c = run(args);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
    CHECK(a.code == c.code);
  }
  fs::remove_all(scratch());
}
