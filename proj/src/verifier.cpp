#include "ratdyn/verifier.hpp"

#include <algorithm>
#include <stdexcept>

#include "ratdyn/bounds.hpp"

namespace ratdyn {

namespace {

constexpr std::size_t kMaxFailWitnesses = 32;

std::string str(std::size_t v) { return std::to_string(v); }

void add_failure(VerificationReport& r, Witness w) {
  r.status = CheckStatus::kFail;
  if (r.witnesses.size() < kMaxFailWitnesses) r.witnesses.push_back(std::move(w));
}

VerificationReport skipped(std::string name, std::string reason) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.status = CheckStatus::kSkipped;
  r.reason = std::move(reason);
  return r;
}

std::string join(const std::set<BigInt>& primes) {
  std::string out;
  for (const auto& p : primes) out += (out.empty() ? "" : ",") + p.to_string();
  return out;
}

std::set<BigInt> support_primes(const BigInt& n) {
  std::set<BigInt> out;
  if (n.is_zero()) return out;
  for (const auto& [p, e] : factorize(n)) out.insert(p);
  return out;
}

// |v| with every prime of `primes` divided out.
BigInt strip_primes(const BigInt& v, const std::set<BigInt>& primes) {
  mpz_class z = v.abs().to_mpz();
  for (const auto& p : primes) {
    mpz_class pz = p.to_mpz();
    mpz_remove(z.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t());
  }
  return BigInt(std::move(z));
}

Distance delta(const BigInt& cross_value, const BigInt& p) {
  if (cross_value.is_zero()) return Distance::infinite();
  return Distance::finite(multiplicity(cross_value, p));
}

PlaceSet resolve_places(const ReductionProfile& profile, const std::optional<PlaceSet>& s) {
  if (!s) return profile.s_min;
  for (const auto& p : profile.bad_primes) {
    if (!s->contains(p)) throw std::invalid_argument("S must contain the bad prime " + p.to_string());
  }
  return *s;
}

void echo_map(VerificationReport& r, const HomogPair& pair) { r.parameters["map"] = pair.to_string(); }

void echo_inventory(VerificationReport& r, const DynamicalInventory& inv, const PlaceSet& s) {
  echo_map(r, inv.map);
  r.parameters["height"] = std::to_string(inv.search_height);
  r.parameters["max_iters"] = std::to_string(inv.limits.max_iters);
  r.parameters["escape_height"] = std::to_string(inv.limits.escape_height);
  r.parameters["S"] = "inf" + std::string(s.finite_primes().empty() ? "" : ",") + join(s.finite_primes());
}

bool compare_count(VerificationReport& r, const std::string& quantity, std::size_t count, const BoundMagnitude& bound,
                   const std::string& bound_name, Witness w = {}) {
  Ordering ord = magnitude_compare(BoundMagnitude::exact(BigInt(count)), bound);
  w.fields["quantity"] = quantity;
  w.fields["count"] = str(count);
  w.fields["bound_name"] = bound_name;
  w.fields["bound"] = render(bound);
  w.fields["ordering"] = to_string(ord);
  bool ok = ord != Ordering::kGreater;
  w.fields["result"] = ok ? "ok" : "violated";
  if (ok) {
    r.witnesses.push_back(std::move(w));
  } else {
    add_failure(r, std::move(w));
  }
  return ok;
}

}  // namespace

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "PASS";
    case CheckStatus::kFail:
      return "FAIL";
    case CheckStatus::kSkipped:
      return "SKIPPED";
  }
  return "?";
}

VerificationReport check_ultrametric(const std::vector<ProjPoint>& points) {
  if (points.size() < 3) throw std::invalid_argument("ultrametric check needs at least three points");
  const std::size_t n = points.size();
  VerificationReport r;
  r.check_name = "ultrametric";
  std::vector<std::vector<BigInt>> c(n, std::vector<BigInt>(n));
  std::set<BigInt> primes;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      c[i][j] = c[j][i] = cross(points[i], points[j]);
      for (const auto& p : support_primes(c[i][j])) primes.insert(p);
    }
  }
  std::size_t checked = 0, skipped_triples = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (c[i][j].is_zero() || c[j][k].is_zero() || c[i][k].is_zero()) {
          ++skipped_triples;
          continue;
        }
        ++checked;
        for (const auto& p : primes) {
          Distance d13 = delta(c[i][k], p), d12 = delta(c[i][j], p), d23 = delta(c[j][k], p);
          if (d13 < std::min(d12, d23)) {
            add_failure(r, {{{"p1", points[i].to_string()},
                             {"p2", points[j].to_string()},
                             {"p3", points[k].to_string()},
                             {"prime", p.to_string()},
                             {"d13", d13.to_string()},
                             {"d12", d12.to_string()},
                             {"d23", d23.to_string()}}});
          }
        }
      }
    }
  }
  r.parameters["points"] = str(n);
  r.parameters["triples_checked"] = str(checked);
  r.parameters["triples_skipped"] = str(skipped_triples);
  r.parameters["primes"] = join(primes);
  if (checked == 0 && r.status == CheckStatus::kPass) {
    r.status = CheckStatus::kSkipped;
    r.reason = "every triple contains coincident points";
  }
  return r;
}

VerificationReport check_non_expansion(const HomogPair& pair, const ReductionProfile& profile,
                                       const std::vector<ProjPoint>& points) {
  if (pair.below_degree_two()) throw std::invalid_argument("non-expansion check requires degree >= 2");
  VerificationReport r;
  r.check_name = "non_expansion";
  echo_map(r, pair);
  std::vector<ProjPoint> images;
  images.reserve(points.size());
  for (const auto& p : points) images.push_back(evaluate(pair, p));
  std::size_t checked = 0, coincident = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      BigInt before = cross(points[i], points[j]);
      if (before.is_zero()) {
        ++coincident;
        continue;
      }
      ++checked;
      BigInt after = cross(images[i], images[j]);
      std::set<BigInt> primes = support_primes(before);
      for (const auto& p : support_primes(after)) primes.insert(p);
      for (const auto& p : primes) {
        if (profile.bad_primes.count(p) != 0) continue;
        Distance d0 = delta(before, p), d1 = delta(after, p);
        if (d1 < d0) {
          add_failure(r, {{{"p", points[i].to_string()},
                           {"q", points[j].to_string()},
                           {"phi_p", images[i].to_string()},
                           {"phi_q", images[j].to_string()},
                           {"prime", p.to_string()},
                           {"before", d0.to_string()},
                           {"after", d1.to_string()}}});
        }
      }
    }
  }
  r.parameters["pairs_checked"] = str(checked);
  r.parameters["pairs_skipped"] = str(coincident);
  if (checked == 0 && r.status == CheckStatus::kPass) {
    r.status = CheckStatus::kSkipped;
    r.reason = "no pair of distinct points";
  }
  return r;
}

VerificationReport check_chain_lemma(const HomogPair& pair, const ReductionProfile& profile, const ProjPoint& p0,
                                     const std::vector<ProjPoint>& chain, int a, int b) {
  if (!(0 < a && a < b)) throw std::invalid_argument("chain lemma needs 0 < a < b");
  if (chain.size() != static_cast<std::size_t>(b) + 1) {
    throw std::invalid_argument("chain must hold b + 1 = " + std::to_string(b + 1) + " points");
  }
  if (evaluate(pair, p0) != p0) throw std::invalid_argument(p0.to_string() + " is not a fixed point");
  if (chain.back() != p0) throw std::invalid_argument("chain must end at " + p0.to_string());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i] == p0) {
      throw std::invalid_argument("chain reaches " + p0.to_string() + " after " + std::to_string(i) + " iterates");
    }
    if (evaluate(pair, chain[i]) != chain[i + 1]) {
      throw std::invalid_argument("phi^" + std::to_string(i + 1) + "(P_b) is not " + chain[i + 1].to_string());
    }
  }
  const ProjPoint& pb = chain[0];
  const ProjPoint& pa = chain[static_cast<std::size_t>(b - a)];
  VerificationReport r;
  r.check_name = "chain_lemma";
  echo_map(r, pair);
  r.parameters["p0"] = p0.to_string();
  r.parameters["p_b"] = pb.to_string();
  r.parameters["p_a"] = pa.to_string();
  r.parameters["a"] = std::to_string(a);
  r.parameters["b"] = std::to_string(b);
  const BigInt c_ba = cross(pb, pa), c_b0 = cross(pb, p0), c_a0 = cross(pa, p0);
  std::set<BigInt> primes;
  for (const BigInt* c : {&c_ba, &c_b0, &c_a0}) {
    for (const auto& p : support_primes(*c)) {
      if (profile.bad_primes.count(p) == 0) primes.insert(p);
    }
  }
  for (const auto& p : primes) {
    Distance d_ba = delta(c_ba, p), d_b0 = delta(c_b0, p), d_a0 = delta(c_a0, p);
    bool ok = d_ba == d_b0 && d_b0 <= d_a0;
    Witness w{{{"a", std::to_string(a)},
               {"prime", p.to_string()},
               {"d_b_a", d_ba.to_string()},
               {"d_b_0", d_b0.to_string()},
               {"d_a_0", d_a0.to_string()},
               {"result", ok ? "ok" : "violated"}}};
    if (ok) {
      r.witnesses.push_back(std::move(w));
    } else {
      add_failure(r, std::move(w));
    }
  }
  r.parameters["primes"] = join(primes);
  return r;
}

VerificationReport check_chain_lemma(const HomogPair& pair, const ReductionProfile& profile, const ProjPoint& p0,
                                     const std::vector<ProjPoint>& chain) {
  const int b = static_cast<int>(chain.size()) - 1;
  if (b < 2) throw std::invalid_argument("chain lemma needs b >= 2");
  VerificationReport all;
  for (int a = 1; a < b; ++a) {
    VerificationReport r = check_chain_lemma(pair, profile, p0, chain, a, b);
    if (a == 1) {
      all = r;
      all.parameters.erase("a");
      all.parameters.erase("p_a");
      continue;
    }
    if (r.failed()) all.status = CheckStatus::kFail;
    all.witnesses.insert(all.witnesses.end(), r.witnesses.begin(), r.witnesses.end());
  }
  return all;
}

VerificationReport check_chain_lemma(const DynamicalInventory& inv, const ReductionProfile& profile) {
  if (inv.incomplete()) return skipped("chain_lemma", "inventory incomplete");
  VerificationReport r;
  r.check_name = "chain_lemma";
  echo_inventory(r, inv, profile.s_min);
  std::size_t chains = 0;
  for (const auto& cycle : inv.cycles) {
    if (cycle.size() != 1) continue;
    const ProjPoint& p0 = cycle[0];
    for (const auto& q : tails_of(inv, p0)) {
      const int m = inv.tail_length.at(q);
      if (m < 2) continue;
      std::vector<ProjPoint> chain{q};
      for (int i = 0; i < m; ++i) chain.push_back(evaluate(inv.map, chain.back()));
      VerificationReport one = check_chain_lemma(inv.map, profile, p0, chain);
      ++chains;
      for (auto& w : one.witnesses) {
        w.fields["p_b"] = q.to_string();
        w.fields["p0"] = p0.to_string();
      }
      if (one.failed()) r.status = CheckStatus::kFail;
      r.witnesses.insert(r.witnesses.end(), one.witnesses.begin(), one.witnesses.end());
    }
  }
  r.parameters["chains_checked"] = str(chains);
  if (chains == 0) {
    r.status = CheckStatus::kSkipped;
    r.reason = "no tail of length >= 2 above a fixed point";
  }
  return r;
}

VerificationReport check_tail_periodic_distance(const DynamicalInventory& inv, const ReductionProfile& profile) {
  if (inv.incomplete()) return skipped("tail_periodic_distance", "inventory incomplete");
  if (inv.tail.empty()) return skipped("tail_periodic_distance", "no tail points");
  VerificationReport r;
  r.check_name = "tail_periodic_distance";
  echo_inventory(r, inv, profile.s_min);
  std::size_t checked = 0;
  for (const auto& tail : inv.tail) {
    const int m = inv.tail_length.at(tail);
    const int n = inv.cycle_length_of(tail);
    const int steps = (m + n - 1) / n * n;
    ProjPoint excluded = tail;
    for (int i = 0; i < steps; ++i) excluded = evaluate(inv.map, excluded);
    for (const auto& p : inv.per) {
      if (p == excluded) continue;
      ++checked;
      BigInt rest = strip_primes(cross(p, tail), profile.bad_primes);
      if (!rest.is_one()) {
        add_failure(r, {{{"tail", tail.to_string()},
                         {"periodic", p.to_string()},
                         {"excluded", excluded.to_string()},
                         {"good_primes", join(support_primes(rest))}}});
      }
    }
  }
  r.parameters["pairs_checked"] = str(checked);
  return r;
}

VerificationReport check_critical_distance(const DynamicalInventory& inv, const ReductionProfile& profile) {
  if (inv.incomplete()) return skipped("critical_distance", "inventory incomplete");
  if (inv.per0.empty()) return skipped("critical_distance", "no rational critical cycle");
  VerificationReport r;
  r.check_name = "critical_distance";
  echo_inventory(r, inv, profile.s_min);
  std::size_t checked = 0;
  for (const auto& p : inv.per) {
    for (const auto& q : inv.per0) {
      if (p == q) continue;
      ++checked;
      BigInt rest = strip_primes(cross(p, q), profile.bad_primes);
      if (!rest.is_one()) {
        add_failure(r, {{{"periodic", p.to_string()},
                         {"critical_cycle_point", q.to_string()},
                         {"good_primes", join(support_primes(rest))}}});
      }
    }
  }
  r.parameters["pairs_checked"] = str(checked);
  if (checked == 0) {
    r.status = CheckStatus::kSkipped;
    r.reason = "no pair of distinct points";
  }
  return r;
}

namespace {

void check_references(const std::vector<ProjPoint>& q, std::size_t count) {
  if (q.size() != count) throw std::invalid_argument("expected " + std::to_string(count) + " reference points");
  std::set<ProjPoint> distinct(q.begin(), q.end());
  if (distinct.size() != q.size()) throw std::invalid_argument("reference points must be distinct");
}

template <class Accept>
PointSetResult search_set(const char* name, const std::vector<ProjPoint>& q, const PlaceSet& s, std::uint64_t height,
                          BoundMagnitude bound, const std::string& bound_name, Accept accept) {
  PointSetResult out;
  out.search_height = height;
  out.bound = std::move(bound);
  CandidateGrid grid(height);
  std::vector<BigInt> parts(q.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ProjPoint p = grid.point(i);
    if (std::find(q.begin(), q.end(), p) != q.end()) {
      out.coincident.insert(p);
      continue;
    }
    for (std::size_t j = 0; j < q.size(); ++j) parts[j] = strip_primes(cross(p, q[j]), s.finite_primes());
    if (accept(parts)) out.members.insert(p);
  }
  VerificationReport& r = out.report;
  r.check_name = name;
  std::string refs;
  for (const auto& p : q) refs += (refs.empty() ? "" : ",") + p.to_string();
  r.parameters["references"] = refs;
  r.parameters["S"] = "inf" + std::string(s.finite_primes().empty() ? "" : ",") + join(s.finite_primes());
  r.parameters["height"] = std::to_string(height);
  std::string members;
  for (const auto& p : out.members) members += (members.empty() ? "" : ",") + p.to_string();
  r.parameters["members"] = members;
  compare_count(r, "members", out.members.size(), out.bound, bound_name);
  return out;
}

}  // namespace

PointSetResult three_point_set(const std::vector<ProjPoint>& q, const PlaceSet& s,
                               const std::optional<DistanceTargets>& targets, std::uint64_t height) {
  check_references(q, 3);
  const BoundMagnitude bound = unit_equation_bounds(2, static_cast<int>(s.size())).b;
  if (!targets) {
    return search_set("three_point_set", q, s, height, bound, "B",
                      [](const std::vector<BigInt>& f) { return f[0] == f[1] && f[1] == f[2]; });
  }
  std::vector<BigInt> required(3, BigInt(1));
  for (const auto& [key, n] : *targets) {
    const auto& [i, p] = key;
    if (i < 0 || i > 2) throw std::invalid_argument("target index must be 0, 1 or 2");
    if (!is_prime(p)) throw std::invalid_argument(p.to_string() + " is not prime");
    if (s.contains(p)) throw std::invalid_argument("target prime " + p.to_string() + " lies in S");
    required[static_cast<std::size_t>(i)] *= pow(p, n);
  }
  return search_set("three_point_set", q, s, height, bound, "B",
                    [&](const std::vector<BigInt>& f) { return f == required; });
}

PointSetResult four_point_set(const std::vector<ProjPoint>& q, const PlaceSet& s, std::uint64_t height) {
  check_references(q, 4);
  const BoundMagnitude bound = unit_equation_bounds(3, static_cast<int>(s.size())).c + BigInt(2);
  return search_set("four_point_set", q, s, height, bound, "C(3,s)+2",
                    [](const std::vector<BigInt>& f) { return f[0] == f[1] && f[2] == f[3]; });
}

VerificationReport check_tail_count_lemmas(const DynamicalInventory& inv, const ReductionProfile& profile,
                                           const std::optional<PlaceSet>& s) {
  if (inv.incomplete()) return skipped("tail_count_lemmas", "inventory incomplete");
  const PlaceSet places = resolve_places(profile, s);
  VerificationReport r;
  r.check_name = "tail_count_lemmas";
  echo_inventory(r, inv, places);
  const TailBounds tb = tail_bounds(inv.map.degree(), static_cast<int>(places.size()));
  const bool has_two_cycle =
      std::any_of(inv.cycles.begin(), inv.cycles.end(), [](const auto& c) { return c.size() == 2; });
  std::size_t checked = 0;
  for (const auto& p : inv.per) {
    const int period = inv.period(p);
    const std::size_t count = tails_of(inv, p).size();
    auto check = [&](const BoundMagnitude& bound, const char* name) {
      ++checked;
      compare_count(r, "tails_of", count, bound, name, Witness{{{"point", p.to_string()}, {"period", std::to_string(period)}}});
    };
    if (period == 1) {
      check(tb.l1, "L1");
      if (has_two_cycle) check(tb.l4, "L4");
    } else if (period == 2) {
      check(tb.l2, "L2");
    } else if (period == 3) {
      check(tb.l3, "L3");
    }
  }
  if (checked == 0) {
    r.status = CheckStatus::kSkipped;
    r.reason = "no periodic point of period at most 3";
  }
  return r;
}

std::vector<VerificationReport> check_main_theorems(const DynamicalInventory& inv, const ReductionProfile& profile,
                                                    const std::optional<PlaceSet>& s) {
  const char* names[] = {"preper_total_bound", "preper_linear_bound", "periodic_three_point_bound",
                         "tail_critical_count_bound"};
  std::vector<VerificationReport> out;
  if (inv.incomplete()) {
    for (const char* n : names) out.push_back(skipped(n, "inventory incomplete"));
    return out;
  }
  const PlaceSet places = resolve_places(profile, s);
  const AggregateBounds ab = aggregate_bounds(inv.map.degree(), static_cast<int>(places.size()));
  auto start = [&](const char* name) {
    VerificationReport r;
    r.check_name = name;
    echo_inventory(r, inv, places);
    return r;
  };

  VerificationReport total = start(names[0]);
  compare_count(total, "preper", inv.preper.size(), ab.q, "Q");
  out.push_back(std::move(total));

  const bool long_cycle =
      std::any_of(inv.cycles.begin(), inv.cycles.end(), [](const auto& c) { return c.size() >= 2; });
  if (long_cycle) {
    VerificationReport linear = start(names[1]);
    compare_count(linear, "preper", inv.preper.size(), ab.l, "L");
    out.push_back(std::move(linear));
  } else {
    out.push_back(skipped(names[1], "no periodic point of period >= 2"));
  }

  std::set<ProjPoint> qualifying = inv.tail;
  qualifying.insert(inv.per0.begin(), inv.per0.end());
  if (qualifying.size() >= 3) {
    VerificationReport per = start(names[2]);
    compare_count(per, "per", inv.per.size(), ab.tpla + BigInt(3), "3*7^(4s)+3");
    out.push_back(std::move(per));
  } else {
    out.push_back(skipped(names[2], "fewer than three tail or critical-cycle points"));
  }

  if (inv.per.size() >= 4) {
    VerificationReport tc = start(names[3]);
    compare_count(tc, "tail+per0", inv.tail.size() + inv.per0.size(), ab.t, "T");
    out.push_back(std::move(tc));
  } else {
    out.push_back(skipped(names[3], "fewer than four periodic points"));
  }
  return out;
}

}  // namespace ratdyn
