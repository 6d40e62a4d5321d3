#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ratdyn/magnitude.hpp"
#include "ratdyn/orbit.hpp"
#include "ratdyn/proj_point.hpp"
#include "ratdyn/rational_map.hpp"

namespace ratdyn {

enum class CheckStatus { kPass, kFail, kSkipped };
const char* to_string(CheckStatus status);

// One counterexample or confirmation, as named string fields.
struct Witness {
  std::map<std::string, std::string> fields;
};

struct VerificationReport {
  std::string check_name;
  CheckStatus status = CheckStatus::kPass;
  // Why the check was skipped.
  std::string reason;
  std::vector<Witness> witnesses;
  std::map<std::string, std::string> parameters;

  bool failed() const { return status == CheckStatus::kFail; }
};

// delta_p(P1,P3) >= min(delta_p(P1,P2), delta_p(P2,P3)) for all ordered
// triples of distinct indices and all primes in the union of the pairwise
// supports. Triples containing coincident points are skipped. Throws
// std::invalid_argument for fewer than three points.
VerificationReport check_ultrametric(const std::vector<ProjPoint>& points);

// delta_p(phi P, phi Q) >= delta_p(P, Q) for distinct P, Q and every good
// prime dividing either cross product.
VerificationReport check_non_expansion(const HomogPair& pair, const ReductionProfile& profile,
                                       const std::vector<ProjPoint>& points);

// chain = [P_b, phi(P_b), ..., P0] (b + 1 points) ending at the fixed point
// P0, with P_a = chain[b - a]. Checks
// delta_p(P_b, P_a) = delta_p(P_b, P0) <= delta_p(P_a, P0) at every good
// prime in the union of the supports. Throws std::invalid_argument when
// the chain does not satisfy these hypotheses or unless 0 < a < b.
VerificationReport check_chain_lemma(const HomogPair& pair, const ReductionProfile& profile,
                                     const ProjPoint& p0, const std::vector<ProjPoint>& chain, int a,
                                     int b);
// Every a with 0 < a < b for b = chain.size() - 1.
VerificationReport check_chain_lemma(const HomogPair& pair, const ReductionProfile& profile,
                                     const ProjPoint& p0, const std::vector<ProjPoint>& chain);
// All chains of the inventory that end at a fixed point and have b >= 2.
VerificationReport check_chain_lemma(const DynamicalInventory& inv, const ReductionProfile& profile);

// Tail R of tail length m entering a cycle of length n, periodic P other
// than phi^(kn)(R) for kn >= m: the support of (P, R) lies in the bad primes.
VerificationReport check_tail_periodic_distance(const DynamicalInventory& inv, const ReductionProfile& profile);

// Periodic P and Q in a critical cycle, P != Q: the support of (P, Q) lies
// in the bad primes.
VerificationReport check_critical_distance(const DynamicalInventory& inv, const ReductionProfile& profile);

// Required distances delta_p(P, Q_i) = n for (i, p); unlisted pairs are 0.
using DistanceTargets = std::map<std::pair<int, BigInt>, unsigned>;

struct PointSetResult {
  std::set<ProjPoint> members;
  // Reference points of height <= H; their distances to themselves are
  // infinite, so they are listed here instead of being classified.
  std::set<ProjPoint> coincident;
  std::uint64_t search_height = 0;
  BoundMagnitude bound;
  VerificationReport report;
};

// Points P of height <= H with delta_p(P,Q_1) = delta_p(P,Q_2) =
// delta_p(P,Q_3) for all p outside S, or with the prescribed distances
// when targets are given (indices 0..2, primes outside S). Compared
// against B(|S|). Throws std::invalid_argument for repeated Q_i.
PointSetResult three_point_set(const std::vector<ProjPoint>& q, const PlaceSet& s,
                               const std::optional<DistanceTargets>& targets, std::uint64_t height);

// Points with delta_p(P,Q_1) = delta_p(P,Q_2) and delta_p(P,Q_3) =
// delta_p(P,Q_4) for all p outside S, compared against C(3,|S|) + 2.
PointSetResult four_point_set(const std::vector<ProjPoint>& q, const PlaceSet& s, std::uint64_t height);

// |Tail(P)| against L1 (fixed), L2 (period 2), L3 (period 3), and L4 for
// fixed points when a 2-cycle exists. S defaults to the bad primes and
// must contain them.
VerificationReport check_tail_count_lemmas(const DynamicalInventory& inv, const ReductionProfile& profile,
                                           const std::optional<PlaceSet>& s = std::nullopt);

// preper_total_bound: |PrePer| <= Q.
// preper_linear_bound: |PrePer| <= L when some cycle has length >= 2.
// periodic_three_point_bound: |Per| <= 3 * 7^(4s) + 3 when at least three
//   points are tails or lie on critical cycles.
// tail_critical_count_bound: |Tail| + |Per0| <= 12 * 7^(4s) when |Per| >= 4.
// Unmet hypotheses and incomplete inventories give SKIPPED.
std::vector<VerificationReport> check_main_theorems(const DynamicalInventory& inv, const ReductionProfile& profile,
                                                    const std::optional<PlaceSet>& s = std::nullopt);

}  // namespace ratdyn
