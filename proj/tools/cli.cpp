#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <numeric>
#include <thread>

#include "ratdyn/errors.hpp"
#include "report.hpp"

namespace ratdyn::cli {

namespace {

struct MapOptions {
  std::string map;
  std::uint64_t height = 1024;
  std::uint64_t max_iters = 256;
  std::uint64_t escape = 1000000;
  std::vector<std::string> s_extra;
  std::string json_path;
  std::string suite = "all";
};

void add_map_options(CLI::App* cmd, MapOptions& o) {
  cmd->add_option("--map", o.map, "Rational map, e.g. \"z^2-29/16\" or \"[X^2-Y^2 : Y^2]\"")->required();
  cmd->add_option("--height", o.height, "Search height H")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--max-iters", o.max_iters, "Iteration limit per orbit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--escape", o.escape, "Escape height")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--s-extra", o.s_extra, "Extra primes to add to S")->delimiter(',');
  cmd->add_option("--json", o.json_path, "Write the JSON report to this path");
}

AnalysisRequest to_request(const MapOptions& o) {
  AnalysisRequest r;
  r.map_text = o.map;
  r.height = o.height;
  r.limits.max_iters = o.max_iters;
  r.limits.escape_height = o.escape;
  for (const auto& p : o.s_extra) r.extra_primes.push_back(BigInt::parse(p));
  r.suite = o.suite;
  return r;
}

bool write_json(const std::string& path, const Json& j, std::ostream& err) {
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  f << j.dump(2) << "\n";
  return static_cast<bool>(f);
}

int cmd_analyze(const MapOptions& o, std::ostream& out, std::ostream& err) {
  Analysis a = analyze(to_request(o));
  out << analysis_text(a);
  if (!o.json_path.empty() && !write_json(o.json_path, analysis_json(a), err)) return kExitUsage;
  if (a.incomplete()) {
    err << "inventory incomplete: " << a.inventory->undecided.size() << " undecided point(s)\n";
    return kExitIncomplete;
  }
  return kExitOk;
}

int cmd_verify(const MapOptions& o, std::ostream& out, std::ostream& err) {
  Analysis a = analyze(to_request(o));
  if (!a.inventory) {
    err << "error: verification requires degree >= 2\n";
    return kExitUsage;
  }
  for (const auto& r : a.verifications) {
    out << to_string(r.status) << " " << r.check_name;
    if (!r.reason.empty()) out << " (" << r.reason << ")";
    out << "\n";
    if (!r.failed()) continue;
    for (const auto& w : r.witnesses) {
      out << "  witness:";
      for (const auto& [k, v] : w.fields) out << " " << k << "=" << v;
      out << "\n";
    }
  }
  if (!o.json_path.empty() && !write_json(o.json_path, analysis_json(a), err)) return kExitUsage;
  return a.any_failed() ? kExitCheckFailed : kExitOk;
}

std::string bound_label(const std::string& name) {
  if (name == "C3") return "C(3,·)";
  if (name == "C5") return "C(5,·)";
  return name;
}

int cmd_bounds(int d, int s, const std::string& which, const std::string& json_path, std::ostream& out,
               std::ostream& err) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["d"] = d;
  j["s"] = s;
  Json rows = Json::object();
  for (const auto& [name, m] : bound_table(d, s)) {
    if (!which.empty() && which != name) continue;
    out << bound_label(name) << " = " << render(m) << "\n";
    rows[name] = bound_json(m);
  }
  j["bounds"] = rows;
  if (!json_path.empty() && !write_json(json_path, j, err)) return kExitUsage;
  return kExitOk;
}

struct BatchOptions {
  std::string family;
  long num_max = 0;
  long den_max = 0;
  unsigned jobs = 1;
  std::string csv_path;
  std::uint64_t height = 1024;
  std::uint64_t max_iters = 256;
  std::uint64_t escape = 1000000;
};

struct BatchRow {
  BigRat c;
  std::size_t s = 0;
  std::size_t preper = 0, per = 0, tail = 0, per0 = 0;
  bool incomplete = false;
  std::string bound_check;
};

BatchRow analyze_quadratic(const BigRat& c, std::uint64_t height, const OrbitLimits& limits,
                           const std::shared_ptr<const CandidateGrid>& grid) {
  // z^2 + a/b = [b X^2 + a Y^2 : b Y^2].
  const BigInt& a = c.num();
  const BigInt& b = c.den();
  HomogPair pair({b, BigInt(0), a}, {BigInt(0), BigInt(0), b}, "z^2+" + c.to_string());
  BatchRow row;
  row.c = c;
  ReductionProfile profile = reduction_profile(pair);
  row.s = profile.s_min.size();
  DynamicalInventory inv = enumerate_preperiodic(pair, height, limits, EnumerateOptions{grid, false});
  row.preper = inv.preper.size();
  row.per = inv.per.size();
  row.tail = inv.tail.size();
  row.per0 = inv.per0.size();
  row.incomplete = inv.incomplete();
  try {
    auto reports = check_main_theorems(inv, profile);
    bool failed = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.failed(); });
    bool passed = std::any_of(reports.begin(), reports.end(),
                              [](const auto& r) { return r.status == CheckStatus::kPass; });
    row.bound_check = failed ? "FAIL" : passed ? "PASS" : "SKIPPED";
  } catch (const Error&) {
    row.bound_check = "SKIPPED";
  }
  return row;
}

int cmd_batch(const BatchOptions& o, std::ostream& out, std::ostream& err) {
  std::string family = o.family;
  family.erase(std::remove(family.begin(), family.end(), ' '), family.end());
  if (family != "z^2+c") {
    err << "error: unsupported family \"" << o.family << "\" (supported: z^2+c)\n";
    return kExitUsage;
  }
  std::vector<BigRat> params;
  for (long b = 1; b <= o.den_max; ++b) {
    for (long a = -o.num_max; a <= o.num_max; ++a) {
      if (std::gcd(a, b) == 1) params.emplace_back(BigInt(a), BigInt(b));
    }
  }
  OrbitLimits limits{o.max_iters, o.escape};
  auto grid = std::make_shared<const CandidateGrid>(o.height);
  std::vector<BatchRow> rows(params.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < params.size(); i = next++) rows[i] = analyze_quadratic(params[i], o.height, limits, grid);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(params.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!o.csv_path.empty()) {
    std::ofstream f(o.csv_path);
    if (!f) {
      err << "error: cannot write " << o.csv_path << "\n";
      return kExitUsage;
    }
    f << "c,S_size,preper,per,tail,per0,incomplete,bound_check\n";
    for (const auto& r : rows) {
      f << r.c.to_string() << "," << r.s << "," << r.preper << "," << r.per << "," << r.tail << "," << r.per0 << ","
        << (r.incomplete ? "true" : "false") << "," << r.bound_check << "\n";
    }
  }

  std::size_t best = 0, incomplete = 0, failed = 0;
  for (const auto& r : rows) {
    best = std::max(best, r.preper);
    incomplete += r.incomplete;
    failed += r.bound_check == "FAIL";
  }
  std::string witnesses;
  for (const auto& r : rows) {
    if (r.preper == best) witnesses += (witnesses.empty() ? "" : ", ") + r.c.to_string();
  }
  out << "maps analyzed: " << rows.size() << "\n";
  out << "incomplete inventories: " << incomplete << "\n";
  out << "bound check failures: " << failed << "\n";
  out << "max |PrePer| = " << best << " at c = " << witnesses << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Preperiodic points of rational maps over Q and explicit bounds for them", "ratdyn"};
  app.require_subcommand(1);

  MapOptions analyze_opts;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Enumerate preperiodic points and run all checks");
  add_map_options(analyze_cmd, analyze_opts);

  MapOptions verify_opts;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  add_map_options(verify_cmd, verify_opts);
  verify_cmd->add_option("--suite", verify_opts.suite, "Suite to run")
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();

  int d = 0, s = 0;
  std::string which, bounds_json;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Evaluate the explicit bounds for degree d and |S| = s");
  bounds_cmd->add_option("--d", d, "Degree")->required()->check(CLI::Range(2, 1000000));
  bounds_cmd->add_option("--s", s, "|S|, counting the archimedean place")->required()->check(CLI::Range(1, 10000));
  std::vector<std::string> names;
  for (const auto& [name, m] : bound_table(2, 1)) names.push_back(name);
  bounds_cmd->add_option("--which", which, "Print one bound")->check(CLI::IsMember(names));
  bounds_cmd->add_option("--json", bounds_json, "Write the JSON table to this path");

  BatchOptions batch;
  CLI::App* batch_cmd = app.add_subcommand("batch", "Sweep a one-parameter family");
  batch_cmd->add_option("--family", batch.family, "Family, currently only \"z^2+c\"")->required();
  batch_cmd->add_option("--c-num-max", batch.num_max, "Bound on |numerator of c|")
      ->required()
      ->check(CLI::Range(1L, 1000000L));
  batch_cmd->add_option("--c-den-max", batch.den_max, "Bound on the denominator of c")
      ->required()
      ->check(CLI::Range(1L, 1000000L));
  batch_cmd->add_option("--jobs", batch.jobs, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  batch_cmd->add_option("--csv", batch.csv_path, "Write one CSV row per map");
  batch_cmd->add_option("--height", batch.height, "Search height H")->check(CLI::PositiveNumber)->capture_default_str();
  batch_cmd->add_option("--max-iters", batch.max_iters, "Iteration limit per orbit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  batch_cmd->add_option("--escape", batch.escape, "Escape height")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(analyze_opts, out, err);
    if (*verify_cmd) return cmd_verify(verify_opts, out, err);
    if (*bounds_cmd) return cmd_bounds(d, s, which, bounds_json, out, err);
    if (*batch_cmd) return cmd_batch(batch, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegenerateMap& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace ratdyn::cli
