#include <doctest.h>

#include <algorithm>
#include <functional>
#include <optional>

#include "ratdyn/orbit.hpp"

using namespace ratdyn;

namespace {

ProjPoint P(const char* s) { return ProjPoint::parse(s); }

std::set<ProjPoint> points(std::initializer_list<const char*> list) {
  std::set<ProjPoint> out;
  for (const char* s : list) out.insert(P(s));
  return out;
}

// Affine point or infinity, evaluated with plain rational arithmetic.
using Affine = std::optional<BigRat>;

struct Oracle {
  OrbitStatus status;
  int period = 0;
  int tail = 0;
};

BigInt oracle_height(const Affine& z) {
  if (!z) return BigInt(1);
  return std::max(z->num().abs(), z->den());
}

// Stores the whole trajectory and scans it linearly for repeats.
Oracle naive_classify(const std::function<Affine(const Affine&)>& f, const Affine& start, std::uint64_t max_iters,
                      std::uint64_t escape) {
  if (oracle_height(start) > BigInt(escape)) return {OrbitStatus::kEscaped};
  std::vector<Affine> traj{start};
  for (std::uint64_t it = 1; it <= max_iters; ++it) {
    Affine next = f(traj.back());
    if (oracle_height(next) > BigInt(escape)) return {OrbitStatus::kEscaped};
    for (std::size_t j = 0; j < traj.size(); ++j) {
      if (traj[j] == next) {
        int len = static_cast<int>(traj.size() - j);
        if (j == 0) return {OrbitStatus::kPeriodic, len, 0};
        return {OrbitStatus::kTail, len, static_cast<int>(j)};
      }
    }
    traj.push_back(next);
  }
  return {OrbitStatus::kUndecided};
}

std::function<Affine(const Affine&)> quadratic(BigRat c) {
  return [c](const Affine& z) -> Affine {
    if (!z) return std::nullopt;
    return *z * *z + c;
  };
}

Affine to_affine(const ProjPoint& p) {
  if (p.is_infinity()) return std::nullopt;
  return p.value();
}

void check_inventory_invariants(const DynamicalInventory& inv) {
  // PrePer is the disjoint union of Per and Tail.
  std::set<ProjPoint> joined = inv.per;
  joined.insert(inv.tail.begin(), inv.tail.end());
  CHECK(joined == inv.preper);
  CHECK(joined.size() == inv.per.size() + inv.tail.size());
  for (const auto& p : inv.per0) CHECK(inv.per.count(p) == 1);
  // Cycles are closed and map to rotations of themselves.
  std::set<ProjPoint> on_cycles;
  for (const auto& cycle : inv.cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      CHECK(evaluate(inv.map, cycle[i]) == cycle[(i + 1) % cycle.size()]);
      on_cycles.insert(cycle[i]);
    }
  }
  CHECK(on_cycles == inv.per);
  // Tail-length descent.
  for (const auto& q : inv.tail) {
    const int m = inv.tail_length.at(q);
    ProjPoint image = evaluate(inv.map, q);
    if (m == 1) {
      CHECK(inv.per.count(image) == 1);
    } else {
      CHECK(inv.tail_length.at(image) == m - 1);
    }
  }
  // tails_by_target matches the definition.
  for (const auto& p : inv.per) {
    std::set<ProjPoint> expect;
    for (const auto& q : inv.tail) {
      ProjPoint r = q;
      for (int i = 0; i < inv.tail_length.at(q) + 64; ++i) {
        r = evaluate(inv.map, r);
        if (r == p) {
          expect.insert(q);
          break;
        }
      }
    }
    CHECK(tails_of(inv, p) == expect);
  }
  // A point has at most d rational preimages.
  for (const auto& p : inv.per) {
    int preimages = 0;
    for (const auto& q : inv.preper) preimages += evaluate(inv.map, q) == p;
    CHECK(preimages <= inv.map.degree());
  }
}

}  // namespace

TEST_CASE("classify_point examples") {
  auto a = classify_point(parse_map("z^2"), P("-1"));
  CHECK(a.status == OrbitStatus::kTail);
  CHECK(a.tail_length == 1);
  CHECK(a.period == 1);
  CHECK(*a.entry_point == P("1"));

  auto b = classify_point(parse_map("z^2-1"), P("0"));
  CHECK(b.status == OrbitStatus::kPeriodic);
  CHECK(b.period == 2);
  CHECK(b.trajectory == std::vector<ProjPoint>{P("0"), P("-1")});

  auto c = classify_point(parse_map("z^2"), P("2"));
  CHECK(c.status == OrbitStatus::kEscaped);
  CHECK(c.steps == 5);  // 2, 4, 16, 256, 65536, then 2^32 exceeds 10^6

  auto d = classify_point(parse_map("z^2"), P("2"), OrbitLimits{3, 1000000});
  CHECK(d.status == OrbitStatus::kUndecided);
  CHECK_THROWS_AS(classify_point(parse_map("z^2"), P("2"), OrbitLimits{0, 10}), std::invalid_argument);
  CHECK_THROWS_AS(classify_point(parse_map("z^2"), P("2"), OrbitLimits{10, 0}), std::invalid_argument);
  CHECK(std::string(to_string(OrbitStatus::kTail)) == "TAIL");
}

TEST_CASE("oracle equivalence of classify_point on all points of height <= 30") {
  for (const char* c : {"0", "-1", "-29/16", "-2", "1/4"}) {
    HomogPair m = parse_map(std::string("z^2+") + c);
    auto f = quadratic(BigRat::parse(c));
    for (std::uint64_t iters : {3u, 10u}) {
      for (std::uint64_t escape : {1000u, 1000000u}) {
        CandidateGrid grid(30);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          ProjPoint p = grid.point(i);
          auto got = classify_point(m, p, OrbitLimits{iters, escape});
          Oracle want = naive_classify(f, to_affine(p), iters, escape);
          REQUIRE(got.status == want.status);
          if (want.status == OrbitStatus::kPeriodic || want.status == OrbitStatus::kTail) {
            CHECK(got.period == want.period);
            CHECK(got.tail_length == want.tail);
          }
        }
      }
    }
  }
}

TEST_CASE("CandidateGrid lists canonical points of bounded height") {
  CandidateGrid g(2);
  std::set<ProjPoint> got;
  for (std::size_t i = 0; i < g.size(); ++i) got.insert(g.point(i));
  CHECK(got == points({"inf", "-2", "-1", "0", "1", "2", "-1/2", "1/2"}));
  CHECK(g.size() == 8);
  CHECK(g.point(0).is_infinity());
  CHECK_THROWS_AS(CandidateGrid(0), std::invalid_argument);
}

TEST_CASE("inventory of z^2-29/16") {
  DynamicalInventory inv = enumerate_preperiodic(parse_map("z^2-29/16"), 64);
  CHECK(inv.preper.size() == 9);
  CHECK(inv.per == points({"inf", "-1/4", "-7/4", "5/4"}));
  CHECK(inv.tail == points({"1/4", "7/4", "-5/4", "3/4", "-3/4"}));
  CHECK(inv.per0 == points({"inf"}));
  REQUIRE(inv.cycles.size() == 2);
  CHECK(inv.cycles[0] == std::vector<ProjPoint>{P("-7/4"), P("5/4"), P("-1/4")});
  CHECK(inv.cycles[1] == std::vector<ProjPoint>{P("inf")});
  CHECK(tails_of(inv, P("-1/4")) == points({"1/4", "7/4", "-5/4", "3/4", "-3/4"}));
  CHECK(tails_of(inv, P("inf")).empty());
  CHECK(inv.tail_length.at(P("3/4")) == 2);
  CHECK(inv.tail_length.at(P("1/4")) == 1);
  CHECK(inv.period(P("5/4")) == 3);
  CHECK_FALSE(inv.incomplete());
  check_inventory_invariants(inv);
}

TEST_CASE("inventories of z^2, z^2-1, z^2+1") {
  DynamicalInventory sq = enumerate_preperiodic(parse_map("z^2"), 100);
  CHECK(sq.preper == points({"0", "inf", "1", "-1"}));
  CHECK(sq.per == points({"0", "inf", "1"}));
  CHECK(sq.tail == points({"-1"}));
  CHECK(sq.per0 == points({"0", "inf"}));
  CHECK(tails_of(sq, P("1")) == points({"-1"}));
  CHECK(tails_of(sq, P("0")).empty());
  CHECK_THROWS_AS(tails_of(sq, P("-1")), std::invalid_argument);
  check_inventory_invariants(sq);

  DynamicalInventory m1 = enumerate_preperiodic(parse_map("z^2-1"), 100);
  CHECK(m1.preper == points({"inf", "0", "-1", "1"}));
  CHECK(m1.per0 == points({"inf", "0", "-1"}));
  CHECK(tails_of(m1, P("0")) == points({"1"}));
  check_inventory_invariants(m1);

  DynamicalInventory p1 = enumerate_preperiodic(parse_map("z^2+1"), 100);
  CHECK(p1.preper == points({"inf"}));
  check_inventory_invariants(p1);
}

TEST_CASE("inventory includes forward images above the search height") {
  // 0 -> -2 -> 2 -> 2 for z^2-2; at H = 1 only 0 and +-1 are searched.
  DynamicalInventory inv = enumerate_preperiodic(parse_map("z^2-2"), 1);
  CHECK(inv.preper.count(P("2")) == 1);
  CHECK(inv.preper.count(P("-2")) == 1);
  CHECK(inv.tail_length.at(P("0")) == 2);
}

TEST_CASE("generic path agrees with the 128-bit kernel") {
  for (const char* map : {"z^2-29/16", "z^2-21/16", "(z^2+1)/(2*z)", "z^3-z", "1/z^2", "(3*z^2-1)/(z^2+2*z)"}) {
    HomogPair m = parse_map(map);
    DynamicalInventory fast = enumerate_preperiodic(m, 40);
    DynamicalInventory slow = enumerate_preperiodic(m, 40, {}, EnumerateOptions{nullptr, true});
    CHECK(fast.preper == slow.preper);
    CHECK(fast.per == slow.per);
    CHECK(fast.cycles == slow.cycles);
    CHECK(fast.tail_length == slow.tail_length);
    CHECK(fast.per0 == slow.per0);
    check_inventory_invariants(fast);
  }
}

TEST_CASE("inventory grows monotonically with the height") {
  for (const char* map : {"z^2-29/16", "z^2-3/4", "(z^2+1)/(2*z)"}) {
    HomogPair m = parse_map(map);
    std::set<ProjPoint> prev;
    for (std::uint64_t h : {1u, 4u, 16u, 64u}) {
      DynamicalInventory inv = enumerate_preperiodic(m, h);
      CHECK(std::includes(inv.preper.begin(), inv.preper.end(), prev.begin(), prev.end()));
      prev = inv.preper;
    }
  }
}

TEST_CASE("undecided points mark the inventory incomplete") {
  DynamicalInventory inv = enumerate_preperiodic(parse_map("z^2-29/16"), 8, OrbitLimits{2, 1000000});
  CHECK(inv.incomplete());
  CHECK_FALSE(inv.undecided.empty());
}

TEST_CASE("enumeration refuses degree 1") {
  CHECK_THROWS_AS(enumerate_preperiodic(parse_map("2*z"), 10), std::invalid_argument);
}

TEST_CASE("large coefficients fall back to exact arithmetic") {
  HomogPair m = parse_map("z^2 - 29/16 + 0*z");
  OrbitLimits wide{256, std::uint64_t{1} << 62};
  DynamicalInventory inv = enumerate_preperiodic(m, 20, wide);
  CHECK(inv.preper.size() == 9);
}
