#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "ratdyn/proj_point.hpp"
#include "ratdyn/rational_map.hpp"

namespace ratdyn {

struct OrbitLimits {
  std::uint64_t max_iters = 256;
  // A trajectory escapes once a canonical coordinate exceeds this in
  // absolute value. Heuristic evidence of non-preperiodicity only.
  std::uint64_t escape_height = 1000000;
};

enum class OrbitStatus { kPeriodic, kTail, kEscaped, kUndecided };

const char* to_string(OrbitStatus status);

struct OrbitClassification {
  OrbitStatus status = OrbitStatus::kUndecided;
  // Period of the cycle the orbit ends in (kPeriodic, kTail).
  int period = 0;
  // Least m >= 1 with phi^m(P) periodic (kTail only).
  int tail_length = 0;
  // First periodic point on the orbit; identifies the cycle.
  std::optional<ProjPoint> entry_point;
  // Map applications performed before escaping or giving up.
  std::uint64_t steps = 0;
  // P, phi(P), ... up to the first repeat (exclusive) or the last point
  // below the escape height.
  std::vector<ProjPoint> trajectory;
};

// Throws std::invalid_argument when a limit is zero.
OrbitClassification classify_point(const HomogPair& pair, const ProjPoint& point,
                                   const OrbitLimits& limits = {});

// Canonical points of naive height <= H: infinity first, then y = 1..H with
// x = -H..H coprime to y. Shared between enumerations over one height.
class CandidateGrid {
 public:
  explicit CandidateGrid(std::uint64_t height);

  std::uint64_t height() const { return height_; }
  std::size_t size() const { return xs_.size(); }
  std::int64_t x(std::size_t i) const { return xs_[i]; }
  std::int64_t y(std::size_t i) const { return ys_[i]; }
  ProjPoint point(std::size_t i) const;

 private:
  std::uint64_t height_;
  std::vector<std::int64_t> xs_;
  std::vector<std::int64_t> ys_;
};

struct DynamicalInventory {
  HomogPair map;
  std::uint64_t search_height = 0;
  OrbitLimits limits;

  std::set<ProjPoint> per;
  std::set<ProjPoint> tail;
  std::set<ProjPoint> preper;
  std::set<ProjPoint> per0;
  // Each cycle in orbit order, rotated to start at its least point; cycles
  // sorted by that first point.
  std::vector<std::vector<ProjPoint>> cycles;
  std::map<ProjPoint, std::set<ProjPoint>> tails_by_target;
  std::map<ProjPoint, int> tail_length;
  std::map<ProjPoint, std::size_t> cycle_index;
  // Candidates that neither repeated nor escaped within max_iters.
  std::vector<ProjPoint> undecided;

  bool incomplete() const { return !undecided.empty(); }
  // Period of a periodic point; throws std::invalid_argument otherwise.
  int period(const ProjPoint& p) const;
  // Cycle length of the periodic part of any preperiodic point.
  int cycle_length_of(const ProjPoint& p) const;
};

struct EnumerateOptions {
  // Reuse a grid across many maps of one height (batch sweeps).
  std::shared_ptr<const CandidateGrid> grid;
  // Skip the 128-bit kernel; exercised by tests.
  bool force_generic = false;
};

// Classifies every point of height <= H and closes the preperiodic set
// under forward images. Throws std::invalid_argument for degree < 2.
DynamicalInventory enumerate_preperiodic(const HomogPair& pair, std::uint64_t height,
                                         const OrbitLimits& limits = {},
                                         const EnumerateOptions& options = {});

// Non-periodic points whose forward orbit contains P. Throws
// std::invalid_argument when P is not periodic in the inventory.
std::set<ProjPoint> tails_of(const DynamicalInventory& inv, const ProjPoint& p);

}  // namespace ratdyn
