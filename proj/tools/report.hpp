#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratdyn/bounds.hpp"
#include "ratdyn/orbit.hpp"
#include "ratdyn/rational_map.hpp"
#include "ratdyn/verifier.hpp"

namespace ratdyn::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

struct AnalysisRequest {
  std::string map_text;
  std::uint64_t height = 1024;
  OrbitLimits limits;
  std::vector<BigInt> extra_primes;
  std::string suite = "all";
};

struct Analysis {
  std::string input;
  HomogPair pair;
  ReductionProfile profile;
  PlaceSet places;
  std::uint64_t height = 0;
  OrbitLimits limits;
  // Absent for degree-1 maps.
  std::optional<DynamicalInventory> inventory;
  std::vector<std::pair<std::string, BoundMagnitude>> bounds;
  std::vector<VerificationReport> verifications;

  bool incomplete() const { return inventory && inventory->incomplete(); }
  bool any_failed() const;
};

// Suites accepted by verify.
const std::vector<std::string>& suite_names();

// Parses the map and runs enumeration, bounds and the selected suite.
// Throws ParseError, DegenerateMap and std::invalid_argument on bad input.
Analysis analyze(const AnalysisRequest& request);

// Checks of one suite; library errors inside a check become SKIPPED.
std::vector<VerificationReport> run_suite(const std::string& suite, const DynamicalInventory& inv,
                                          const ReductionProfile& profile, const PlaceSet& places);

// Named bounds in report order: B, C(3,s), C(5,s), L1-L4, CV, T, TPLA,
// FPLA, L, Q.
std::vector<std::pair<std::string, BoundMagnitude>> bound_table(int d, int s);

Json point_json(const ProjPoint& p);
Json report_json(const VerificationReport& r);
Json bound_json(const BoundMagnitude& m);
Json analysis_json(const Analysis& a);

std::string analysis_text(const Analysis& a);

}  // namespace ratdyn::cli
