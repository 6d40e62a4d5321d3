#include "report.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ratdyn/errors.hpp"

namespace ratdyn::cli {

namespace {

std::string join_points(const std::set<ProjPoint>& pts) {
  std::string out;
  for (const auto& p : pts) out += (out.empty() ? "" : ", ") + p.to_string();
  return out;
}

Json points_json(const std::set<ProjPoint>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(point_json(p));
  return out;
}

Json strings_json(const std::set<BigInt>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

Json form_json(const BinaryForm& form) {
  Json out = Json::array();
  for (const auto& c : form) out.push_back(c.to_string());
  return out;
}

VerificationReport guarded(const std::string& name, const std::function<VerificationReport()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    VerificationReport r;
    r.check_name = name;
    r.status = CheckStatus::kSkipped;
    r.reason = e.what();
    return r;
  }
}

}  // namespace

bool Analysis::any_failed() const {
  return std::any_of(verifications.begin(), verifications.end(), [](const auto& r) { return r.failed(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all",          "ultrametric", "nonexpansion", "chain",
                                              "tailperiodic", "critical",    "taillemmas",   "theorems"};
  return names;
}

std::vector<VerificationReport> run_suite(const std::string& suite, const DynamicalInventory& inv,
                                          const ReductionProfile& profile, const PlaceSet& places) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw std::invalid_argument("unknown suite " + suite);
  }
  const bool all = suite == "all";
  const std::vector<ProjPoint> points(inv.preper.begin(), inv.preper.end());
  std::vector<VerificationReport> out;
  if (all || suite == "ultrametric") {
    out.push_back(guarded("ultrametric", [&] {
      if (points.size() < 3) {
        VerificationReport r;
        r.check_name = "ultrametric";
        r.status = CheckStatus::kSkipped;
        r.reason = "fewer than three preperiodic points";
        return r;
      }
      return check_ultrametric(points);
    }));
  }
  if (all || suite == "nonexpansion") {
    out.push_back(guarded("non_expansion", [&] { return check_non_expansion(inv.map, profile, points); }));
  }
  if (all || suite == "chain") {
    out.push_back(guarded("chain_lemma", [&] { return check_chain_lemma(inv, profile); }));
  }
  if (all || suite == "tailperiodic") {
    out.push_back(guarded("tail_periodic_distance", [&] { return check_tail_periodic_distance(inv, profile); }));
  }
  if (all || suite == "critical") {
    out.push_back(guarded("critical_distance", [&] { return check_critical_distance(inv, profile); }));
  }
  if (all || suite == "taillemmas") {
    out.push_back(guarded("tail_count_lemmas", [&] { return check_tail_count_lemmas(inv, profile, places); }));
  }
  if (all || suite == "theorems") {
    try {
      for (auto& r : check_main_theorems(inv, profile, places)) out.push_back(std::move(r));
    } catch (const Error& e) {
      VerificationReport r;
      r.check_name = "main_theorems";
      r.status = CheckStatus::kSkipped;
      r.reason = e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<std::pair<std::string, BoundMagnitude>> bound_table(int d, int s) {
  const UnitEquationBounds u3 = unit_equation_bounds(3, s);
  const UnitEquationBounds u5 = unit_equation_bounds(5, s);
  const TailBounds tb = tail_bounds(d, s);
  const AggregateBounds ab = aggregate_bounds(d, s);
  return {{"B", u3.b},       {"C3", u3.c},    {"C5", u5.c},   {"L1", tb.l1},     {"L2", tb.l2},
          {"L3", tb.l3},     {"L4", tb.l4},   {"CV", ab.cv},  {"T", ab.t},       {"TPLA", ab.tpla},
          {"FPLA", ab.fpla}, {"L", ab.l},     {"Q", ab.q}};
}

Analysis analyze(const AnalysisRequest& request) {
  HomogPair pair = parse_map(request.map_text);
  ReductionProfile profile = reduction_profile(pair);
  std::set<BigInt> extra;
  for (const auto& p : request.extra_primes) {
    if (p.sign() <= 0 || !is_prime(p)) throw std::invalid_argument("--s-extra entry " + p.to_string() + " is not prime");
    extra.insert(p);
  }
  PlaceSet places = profile.s_min.joined(extra);
  Analysis a{request.map_text, pair, profile, places, request.height, request.limits, std::nullopt, {}, {}};
  if (pair.below_degree_two()) return a;
  a.inventory = enumerate_preperiodic(pair, request.height, request.limits);
  a.bounds = bound_table(pair.degree(), static_cast<int>(places.size()));
  a.verifications = run_suite(request.suite, *a.inventory, profile, places);
  return a;
}

Json point_json(const ProjPoint& p) { return p.to_string(); }

Json report_json(const VerificationReport& r) {
  Json out;
  out["check"] = r.check_name;
  out["status"] = to_string(r.status);
  if (!r.reason.empty()) out["reason"] = r.reason;
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  out["parameters"] = params;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json wj = Json::object();
    for (const auto& [k, v] : w.fields) wj[k] = v;
    ws.push_back(wj);
  }
  out["witnesses"] = ws;
  return out;
}

Json bound_json(const BoundMagnitude& m) {
  Json out;
  auto exact = force_exact(m);
  out["exact"] = exact.has_value();
  out["value"] = render(m);
  out["digits"] = digit_count(m).to_string();
  return out;
}

Json analysis_json(const Analysis& a) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["map"] = {{"input", a.input},
                {"canonical", a.pair.to_string()},
                {"F", form_json(a.pair.f())},
                {"G", form_json(a.pair.g())}};
  out["degree"] = a.pair.degree();
  out["resultant"] = a.pair.resultant().to_string();
  out["bad_primes"] = strings_json(a.profile.bad_primes);
  Json s = Json::array();
  for (const auto& label : a.places.labels()) s.push_back(label);
  out["S"] = s;
  out["search"] = {{"height", a.height},
                   {"max_iters", a.limits.max_iters},
                   {"escape_height", a.limits.escape_height}};
  if (a.inventory) {
    const DynamicalInventory& inv = *a.inventory;
    out["counts"] = {{"preper", inv.preper.size()},
                     {"per", inv.per.size()},
                     {"tail", inv.tail.size()},
                     {"per0", inv.per0.size()}};
    out["preper"] = points_json(inv.preper);
    out["per"] = points_json(inv.per);
    out["tail"] = points_json(inv.tail);
    out["per0"] = points_json(inv.per0);
    Json cycles = Json::array();
    for (const auto& c : inv.cycles) {
      Json cj = Json::array();
      for (const auto& p : c) cj.push_back(point_json(p));
      cycles.push_back(cj);
    }
    out["cycles"] = cycles;
    Json tails = Json::object();
    for (const auto& p : inv.per) tails[p.to_string()] = points_json(tails_of(inv, p));
    out["tails_by_target"] = tails;
    Json lengths = Json::object();
    for (const auto& p : inv.tail) lengths[p.to_string()] = inv.tail_length.at(p);
    out["tail_length"] = lengths;
    Json undecided = Json::array();
    for (const auto& p : inv.undecided) undecided.push_back(point_json(p));
    out["undecided"] = undecided;
  }
  Json bounds = Json::object();
  for (const auto& [name, m] : a.bounds) bounds[name] = bound_json(m);
  out["bounds"] = bounds;
  Json ver = Json::array();
  for (const auto& r : a.verifications) ver.push_back(report_json(r));
  out["verifications"] = ver;
  out["flags"] = {{"incomplete", a.incomplete()}, {"degree_below_2", a.pair.below_degree_two()}};
  return out;
}

std::string analysis_text(const Analysis& a) {
  std::ostringstream os;
  os << "map: " << a.pair.to_string() << "\n";
  os << "degree: " << a.pair.degree() << "\n";
  os << "resultant: " << a.pair.resultant() << "\n";
  std::string bad;
  for (const auto& p : a.profile.bad_primes) bad += (bad.empty() ? "" : ", ") + p.to_string();
  os << "bad primes: {" << bad << "}\n";
  std::string s;
  for (const auto& label : a.places.labels()) s += (s.empty() ? "" : ", ") + label;
  os << "S: {" << s << "} (|S| = " << a.places.size() << ")\n";
  if (!a.inventory) {
    os << "degree below 2: no dynamical inventory\n";
    return os.str();
  }
  const DynamicalInventory& inv = *a.inventory;
  os << "search height: " << a.height << "\n";
  os << "preper (" << inv.preper.size() << "): " << join_points(inv.preper) << "\n";
  os << "per (" << inv.per.size() << "): " << join_points(inv.per) << "\n";
  os << "tail (" << inv.tail.size() << "): " << join_points(inv.tail) << "\n";
  os << "per0 (" << inv.per0.size() << "): " << join_points(inv.per0) << "\n";
  for (const auto& c : inv.cycles) {
    os << "cycle:";
    for (const auto& p : c) os << " " << p.to_string();
    os << "\n";
  }
  if (inv.incomplete()) {
    os << "INCOMPLETE: " << inv.undecided.size() << " undecided point(s)\n";
  }
  for (const auto& [name, m] : a.bounds) os << name << " = " << render(m) << "\n";
  for (const auto& r : a.verifications) {
    os << to_string(r.status) << " " << r.check_name;
    if (!r.reason.empty()) os << " (" << r.reason << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace ratdyn::cli
