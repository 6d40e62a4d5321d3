#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using namespace ratdyn::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ratdyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ratdyn_test_" + name);
}

}  // namespace

TEST_CASE("analyze reports the golden inventory") {
  Run r = run({"analyze", "--map", "z^2-29/16", "--height", "64"});
  CHECK(r.code == kExitOk);
  CHECK(has_line(r.out, "preper (9): -7/4, -5/4, -3/4, -1/4, 1/4, 3/4, 5/4, 7/4, inf"));
  CHECK(has_line(r.out, "bad primes: {2}"));
}

TEST_CASE("analyze exit codes") {
  Run bad = run({"analyze", "--map", "z^2+"});
  CHECK(bad.code == kExitUsage);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"analyze", "--map", "[X^2 : X*Y]"}).code == kExitUsage);
  CHECK(run({"analyze"}).code == kExitUsage);
  CHECK(run({"analyze", "--map", "z^2-29/16", "--height", "8", "--max-iters", "2"}).code == kExitIncomplete);
  Run linear = run({"analyze", "--map", "2*z+1"});
  CHECK(linear.code == kExitOk);
  CHECK(has_line(linear.out, "degree below 2: no dynamical inventory"));
}

TEST_CASE("analyze writes schema version 1 JSON") {
  auto path = temp_file("analyze.json");
  Run r = run({"analyze", "--map", "z^2", "--height", "20", "--s-extra", "3,5", "--json", path.string()});
  REQUIRE(r.code == kExitOk);
  std::ifstream f(path);
  auto j = nlohmann::json::parse(f);
  CHECK(j["schema_version"] == "1");
  CHECK(j["counts"]["preper"] == 4);
  CHECK(j["counts"]["per0"] == 2);
  CHECK(j["S"] == nlohmann::json::array({"inf", "3", "5"}));
  CHECK(j["flags"]["incomplete"] == false);
  CHECK(j["bounds"]["B"]["value"] == "281474976710656");
  CHECK(j["map"]["canonical"] == "[X^2 : Y^2]");
  CHECK(j["verifications"].is_array());
  std::filesystem::remove(path);

  // Deterministic output for fixed inputs.
  auto p1 = temp_file("a.json"), p2 = temp_file("b.json");
  run({"analyze", "--map", "z^2-29/16", "--height", "16", "--json", p1.string()});
  run({"analyze", "--map", "z^2-29/16", "--height", "16", "--json", p2.string()});
  std::ifstream f1(p1), f2(p2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("verify suites") {
  Run all = run({"verify", "--map", "z^2-29/16", "--height", "64", "--suite", "all"});
  CHECK(all.code == kExitOk);
  CHECK(all.out.find("FAIL") == std::string::npos);
  Run th = run({"verify", "--map", "z^2", "--height", "64", "--suite", "theorems"});
  CHECK(th.code == kExitOk);
  CHECK(has_line(th.out, "PASS preper_total_bound"));
  CHECK(has_line(th.out, "PASS periodic_three_point_bound"));
  CHECK(has_line(th.out, "SKIPPED tail_critical_count_bound (fewer than four periodic points)"));
  CHECK(run({"verify", "--suite", "all"}).code == kExitUsage);
  CHECK(run({"verify", "--map", "z^2", "--suite", "nosuch"}).code == kExitUsage);
  CHECK(run({"verify", "--map", "2*z", "--suite", "all"}).code == kExitUsage);
}

TEST_CASE("bounds table") {
  Run r = run({"bounds", "--d", "2", "--s", "1"});
  CHECK(r.code == kExitOk);
  CHECK(has_line(r.out, "B = 65536"));
  CHECK(has_line(r.out, "T = 28812"));
  CHECK(has_line(r.out, "L1 = 131075"));
  CHECK(has_line(r.out, "C(3,·) = e^198359290368 (≈8.6e10 digits)"));
  Run one = run({"bounds", "--d", "2", "--s", "2", "--which", "T"});
  CHECK(one.code == kExitOk);
  CHECK(one.out == "T = 69177612\n");
  CHECK(run({"bounds", "--d", "1", "--s", "1"}).code == kExitUsage);
  CHECK(run({"bounds", "--d", "2", "--s", "0"}).code == kExitUsage);
  CHECK(run({"bounds", "--d", "2", "--s", "1", "--which", "Z"}).code == kExitUsage);
}

TEST_CASE("batch sweep") {
  auto csv = temp_file("batch.csv");
  Run r = run({"batch", "--family", "z^2+c", "--c-num-max", "1", "--c-den-max", "1", "--csv", csv.string()});
  CHECK(r.code == kExitOk);
  CHECK(has_line(r.out, "maps analyzed: 3"));
  CHECK(has_line(r.out, "max |PrePer| = 4 at c = -1, 0"));
  std::ifstream f(csv);
  std::string header, row;
  std::getline(f, header);
  CHECK(header == "c,S_size,preper,per,tail,per0,incomplete,bound_check");
  std::getline(f, row);
  CHECK(row == "-1,1,4,3,1,3,false,PASS");
  std::filesystem::remove(csv);

  Run parallel = run({"batch", "--family", "z^2 + c", "--c-num-max", "4", "--c-den-max", "4", "--jobs", "3",
                      "--height", "32"});
  Run serial = run({"batch", "--family", "z^2+c", "--c-num-max", "4", "--c-den-max", "4", "--height", "32"});
  CHECK(parallel.code == kExitOk);
  CHECK(parallel.out == serial.out);

  CHECK(run({"batch", "--family", "z^3+c", "--c-num-max", "1", "--c-den-max", "1"}).code == kExitUsage);
  CHECK(run({"batch", "--family", "z^2+c", "--c-num-max", "0", "--c-den-max", "1"}).code == kExitUsage);
}

TEST_CASE("no subcommand is a usage error") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
}
