#include "ratdyn/orbit.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace ratdyn {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

struct SmallPt {
  std::int64_t x;
  std::int64_t y;
  friend bool operator==(const SmallPt&, const SmallPt&) = default;
};

struct SmallPtHash {
  std::size_t operator()(const SmallPt& p) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(p.x) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(p.y) + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

u128 uabs128(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

int ctz128(u128 v) {
  auto lo = static_cast<std::uint64_t>(v);
  if (lo != 0) return std::countr_zero(lo);
  return 64 + std::countr_zero(static_cast<std::uint64_t>(v >> 64));
}

u128 gcd128(u128 a, u128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = ctz128(a | b);
  a >>= ctz128(a);
  do {
    b >>= ctz128(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

// Iterates maps whose values stay inside 128 bits for every input of height
// at most the escape bound. All trajectory points then fit in int64.
class SmallKernel {
 public:
  static std::optional<SmallKernel> make(const HomogPair& pair, std::uint64_t escape) {
    if (escape >= (std::uint64_t{1} << 62)) return std::nullopt;
    const BigInt limit = BigInt::pow2(125);
    const BigInt e_pow = pow(BigInt(escape), static_cast<unsigned long>(pair.degree()));
    SmallKernel k;
    k.escape_ = static_cast<std::int64_t>(escape);
    for (const BinaryForm* form : {&pair.f(), &pair.g()}) {
      BigInt sum(0);
      for (const auto& c : *form) {
        auto v = c.to_int64();
        if (!v) return std::nullopt;
        sum += c.abs();
      }
      if (sum * e_pow >= limit) return std::nullopt;
    }
    for (const auto& c : pair.f()) k.f_.push_back(*c.to_int64());
    for (const auto& c : pair.g()) k.g_.push_back(*c.to_int64());
    return k;
  }

  bool escaped(const SmallPt& p) const { return p.y > escape_ || p.x > escape_ || p.x < -escape_; }

  // False when the image escapes.
  bool step(const SmallPt& in, SmallPt& out) const {
    i128 fx = eval(f_, in.x, in.y);
    i128 gy = eval(g_, in.x, in.y);
    if (gy == 0) {
      out = {1, 0};
      return true;
    }
    u128 g = gcd128(uabs128(fx), uabs128(gy));
    i128 nx = fx / i128(g);
    i128 ny = gy / i128(g);
    if (ny < 0) {
      nx = -nx;
      ny = -ny;
    }
    if (ny > escape_ || nx > escape_ || nx < -escape_) return false;
    out = {static_cast<std::int64_t>(nx), static_cast<std::int64_t>(ny)};
    return true;
  }

 private:
  static i128 eval(const std::vector<std::int64_t>& c, std::int64_t x, std::int64_t y) {
    i128 r = c[0];
    i128 ypow = 1;
    for (std::size_t i = 1; i < c.size(); ++i) {
      ypow *= y;
      r = r * x + i128(c[i]) * ypow;
    }
    return r;
  }

  std::vector<std::int64_t> f_, g_;
  std::int64_t escape_ = 0;
};

class BigStepper {
 public:
  BigStepper(const HomogPair& pair, std::uint64_t escape) : pair_(pair), escape_(escape) {}

  bool escaped(const ProjPoint& p) const { return p.height() > escape_; }

  bool step(const ProjPoint& in, ProjPoint& out) const {
    out = evaluate(pair_, in);
    return !escaped(out);
  }

 private:
  const HomogPair& pair_;
  BigInt escape_;
};

template <class Pt>
struct PtHash;
template <>
struct PtHash<SmallPt> : SmallPtHash {};
template <>
struct PtHash<ProjPoint> : std::hash<ProjPoint> {};

enum class WalkEnd { kEscaped, kCycle, kKnown, kUndecided };

struct WalkResult {
  WalkEnd end;
  // kCycle: index in the trajectory where the cycle starts.
  std::size_t cycle_start = 0;
  std::uint64_t steps = 0;
};

// Follows the orbit of traj[0] until it escapes, repeats, meets a point for
// which is_known() holds, or runs out of iterations. The trajectory holds
// the distinct non-escaped points visited; for kKnown the known point is
// appended last.
template <class Pt, class Stepper, class IsKnown>
WalkResult walk(std::vector<Pt>& traj, const Stepper& stepper, IsKnown is_known, std::uint64_t max_iters) {
  constexpr std::size_t kLinearScan = 24;
  std::unordered_map<Pt, std::size_t, PtHash<Pt>> index;
  auto find = [&](const Pt& q) -> std::optional<std::size_t> {
    if (traj.size() <= kLinearScan) {
      for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj[i] == q) return i;
      }
      return std::nullopt;
    }
    if (index.empty()) {
      for (std::size_t i = 0; i < traj.size(); ++i) index.emplace(traj[i], i);
    }
    auto it = index.find(q);
    if (it == index.end()) return std::nullopt;
    return it->second;
  };

  Pt next = traj.back();
  for (std::uint64_t it = 1; it <= max_iters; ++it) {
    if (!stepper.step(traj.back(), next)) return {WalkEnd::kEscaped, 0, it};
    if (is_known(next)) {
      traj.push_back(next);
      return {WalkEnd::kKnown, 0, it};
    }
    if (auto at = find(next)) return {WalkEnd::kCycle, *at, it};
    traj.push_back(next);
    if (!index.empty()) index.emplace(next, traj.size() - 1);
  }
  return {WalkEnd::kUndecided, 0, max_iters};
}

void check_limits(const OrbitLimits& limits) {
  if (limits.max_iters == 0) throw std::invalid_argument("max_iters must be positive");
  if (limits.escape_height == 0) throw std::invalid_argument("escape_height must be positive");
}

ProjPoint to_proj(const SmallPt& p) { return ProjPoint::from_canonical(BigInt(p.x), BigInt(p.y)); }
ProjPoint to_proj(const ProjPoint& p) { return p; }

struct PointInfo {
  int tail_length;  // 0 for periodic points
  std::size_t cycle;
};

template <class Pt, class Stepper>
class Enumerator {
 public:
  Enumerator(const Stepper& stepper, std::uint64_t max_iters) : stepper_(stepper), max_iters_(max_iters) {}

  void visit(const Pt& start) {
    if (known_.count(start) != 0 || stepper_.escaped(start)) return;
    traj_.clear();
    traj_.push_back(start);
    auto is_known = [this](const Pt& q) { return known_.count(q) != 0; };
    WalkResult r = walk(traj_, stepper_, is_known, max_iters_);
    switch (r.end) {
      case WalkEnd::kEscaped:
        return;
      case WalkEnd::kUndecided:
        undecided_.push_back(start);
        return;
      case WalkEnd::kKnown: {
        PointInfo hit = known_.at(traj_.back());
        const std::size_t n = traj_.size() - 1;
        for (std::size_t k = 0; k < n; ++k) {
          known_.emplace(traj_[k], PointInfo{hit.tail_length + static_cast<int>(n - k), hit.cycle});
        }
        return;
      }
      case WalkEnd::kCycle: {
        const std::size_t c = cycles_.size();
        cycles_.emplace_back(traj_.begin() + static_cast<std::ptrdiff_t>(r.cycle_start), traj_.end());
        for (std::size_t k = r.cycle_start; k < traj_.size(); ++k) known_.emplace(traj_[k], PointInfo{0, c});
        for (std::size_t k = 0; k < r.cycle_start; ++k) {
          known_.emplace(traj_[k], PointInfo{static_cast<int>(r.cycle_start - k), c});
        }
        return;
      }
    }
  }

  const std::unordered_map<Pt, PointInfo, PtHash<Pt>>& known() const { return known_; }
  const std::vector<std::vector<Pt>>& cycles() const { return cycles_; }
  const std::vector<Pt>& undecided() const { return undecided_; }

 private:
  const Stepper& stepper_;
  std::uint64_t max_iters_;
  std::unordered_map<Pt, PointInfo, PtHash<Pt>> known_;
  std::vector<std::vector<Pt>> cycles_;
  std::vector<Pt> undecided_;
  std::vector<Pt> traj_;
};

template <class Pt, class Stepper>
void collect(const Enumerator<Pt, Stepper>& e, DynamicalInventory& inv) {
  // Rotate cycles to start at their least point, then sort them.
  std::vector<std::vector<ProjPoint>> cycles;
  for (const auto& cyc : e.cycles()) {
    std::vector<ProjPoint> pts;
    for (const auto& p : cyc) pts.push_back(to_proj(p));
    std::rotate(pts.begin(), std::min_element(pts.begin(), pts.end()), pts.end());
    cycles.push_back(std::move(pts));
  }
  std::vector<std::size_t> order(cycles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cycles[a][0] < cycles[b][0]; });
  std::vector<std::size_t> new_index(cycles.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_index[order[i]] = i;
    inv.cycles.push_back(cycles[order[i]]);
  }

  for (const auto& [pt, info] : e.known()) {
    ProjPoint p = to_proj(pt);
    inv.preper.insert(p);
    inv.cycle_index[p] = new_index[info.cycle];
    if (info.tail_length == 0) {
      inv.per.insert(p);
    } else {
      inv.tail.insert(p);
      inv.tail_length[p] = info.tail_length;
    }
  }
  for (const auto& p : e.undecided()) inv.undecided.push_back(to_proj(p));
  std::sort(inv.undecided.begin(), inv.undecided.end());
}

}  // namespace

const char* to_string(OrbitStatus status) {
  switch (status) {
    case OrbitStatus::kPeriodic:
      return "PERIODIC";
    case OrbitStatus::kTail:
      return "TAIL";
    case OrbitStatus::kEscaped:
      return "ESCAPED";
    case OrbitStatus::kUndecided:
      return "UNDECIDED";
  }
  return "?";
}

OrbitClassification classify_point(const HomogPair& pair, const ProjPoint& point, const OrbitLimits& limits) {
  check_limits(limits);
  OrbitClassification out;
  BigStepper stepper(pair, limits.escape_height);
  if (stepper.escaped(point)) {
    out.status = OrbitStatus::kEscaped;
    return out;
  }
  std::vector<ProjPoint> traj{point};
  WalkResult r = walk(traj, stepper, [](const ProjPoint&) { return false; }, limits.max_iters);
  out.steps = r.steps;
  switch (r.end) {
    case WalkEnd::kEscaped:
      out.status = OrbitStatus::kEscaped;
      break;
    case WalkEnd::kUndecided:
    case WalkEnd::kKnown:
      out.status = OrbitStatus::kUndecided;
      break;
    case WalkEnd::kCycle:
      out.period = static_cast<int>(traj.size() - r.cycle_start);
      out.entry_point = traj[r.cycle_start];
      if (r.cycle_start == 0) {
        out.status = OrbitStatus::kPeriodic;
      } else {
        out.status = OrbitStatus::kTail;
        out.tail_length = static_cast<int>(r.cycle_start);
      }
      break;
  }
  out.trajectory = std::move(traj);
  return out;
}

CandidateGrid::CandidateGrid(std::uint64_t height) : height_(height) {
  if (height == 0) throw std::invalid_argument("search height must be positive");
  if (height > (std::uint64_t{1} << 20)) throw std::invalid_argument("search height too large");
  const auto h = static_cast<std::int64_t>(height);
  xs_.push_back(1);
  ys_.push_back(0);
  for (std::int64_t y = 1; y <= h; ++y) {
    for (std::int64_t x = -h; x <= h; ++x) {
      if (std::gcd(x, y) == 1) {
        xs_.push_back(x);
        ys_.push_back(y);
      }
    }
  }
}

ProjPoint CandidateGrid::point(std::size_t i) const {
  return ProjPoint::from_canonical(BigInt(xs_[i]), BigInt(ys_[i]));
}

int DynamicalInventory::period(const ProjPoint& p) const {
  if (per.count(p) == 0) throw std::invalid_argument(p.to_string() + " is not periodic");
  return static_cast<int>(cycles[cycle_index.at(p)].size());
}

int DynamicalInventory::cycle_length_of(const ProjPoint& p) const {
  auto it = cycle_index.find(p);
  if (it == cycle_index.end()) throw std::invalid_argument(p.to_string() + " is not preperiodic");
  return static_cast<int>(cycles[it->second].size());
}

DynamicalInventory enumerate_preperiodic(const HomogPair& pair, std::uint64_t height, const OrbitLimits& limits,
                                         const EnumerateOptions& options) {
  check_limits(limits);
  if (pair.below_degree_two()) throw std::invalid_argument("enumeration requires degree >= 2");
  std::shared_ptr<const CandidateGrid> grid = options.grid;
  if (!grid || grid->height() != height) grid = std::make_shared<CandidateGrid>(height);

  DynamicalInventory inv{pair, height, limits, {}, {}, {}, {}, {}, {}, {}, {}, {}};

  std::optional<SmallKernel> kernel;
  if (!options.force_generic) kernel = SmallKernel::make(pair, limits.escape_height);
  if (kernel) {
    Enumerator<SmallPt, SmallKernel> e(*kernel, limits.max_iters);
    for (std::size_t i = 0; i < grid->size(); ++i) e.visit(SmallPt{grid->x(i), grid->y(i)});
    collect(e, inv);
  } else {
    BigStepper stepper(pair, limits.escape_height);
    Enumerator<ProjPoint, BigStepper> e(stepper, limits.max_iters);
    for (std::size_t i = 0; i < grid->size(); ++i) e.visit(grid->point(i));
    collect(e, inv);
  }

  std::vector<ProjPoint> critical = critical_points_rational(pair);
  for (const auto& cyc : inv.cycles) {
    bool is_critical = std::any_of(cyc.begin(), cyc.end(), [&](const ProjPoint& p) {
      return std::binary_search(critical.begin(), critical.end(), p);
    });
    if (is_critical) inv.per0.insert(cyc.begin(), cyc.end());
  }
  for (const auto& q : inv.tail) {
    for (const auto& p : inv.cycles[inv.cycle_index.at(q)]) inv.tails_by_target[p].insert(q);
  }
  return inv;
}

std::set<ProjPoint> tails_of(const DynamicalInventory& inv, const ProjPoint& p) {
  if (inv.per.count(p) == 0) throw std::invalid_argument(p.to_string() + " is not a periodic point of the inventory");
  auto it = inv.tails_by_target.find(p);
  if (it == inv.tails_by_target.end()) return {};
  return it->second;
}

}  // namespace ratdyn
