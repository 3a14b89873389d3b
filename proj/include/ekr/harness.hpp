#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ekr/json_io.hpp"
#include "ekr/rng.hpp"
#include "ekr/solver.hpp"

namespace ekr {

enum class SuiteId {
  kTauTable,
  kRGood,
  kTDistinct,
  kCycleLemma,
  kLemma3Count,
  kTheoremBound,
  kTheoremUnique,
  kDuality,
  kNoGoodOrdering,
  kDoubleCount,
};

inline constexpr std::array kAllSuites = {
    SuiteId::kTauTable,     SuiteId::kRGood,         SuiteId::kTDistinct,  SuiteId::kCycleLemma,
    SuiteId::kLemma3Count,  SuiteId::kTheoremBound,  SuiteId::kTheoremUnique,
    SuiteId::kDuality,      SuiteId::kNoGoodOrdering, SuiteId::kDoubleCount,
};

std::string_view to_string(SuiteId id);
std::optional<SuiteId> suite_from_string(std::string_view name);

/// Unvalidated (k, r, n); checked when a suite runs.
struct GridPoint {
  std::uint32_t k = 0, r = 0, n = 0;
  std::string label() const;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// A cycle of m elements with windows of length r.
struct CyclePoint {
  std::uint32_t m = 0, r = 0;
  std::string label() const;
  friend bool operator==(const CyclePoint&, const CyclePoint&) = default;
};

struct SuiteMode {
  bool sampled = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = kDefaultSeed;

  static SuiteMode exact() { return {}; }
  static SuiteMode sampling(std::uint64_t count, std::uint64_t seed = kDefaultSeed) {
    return {true, count, seed};
  }
};

struct Caps {
  std::uint64_t vertex_cap = kDefaultVertexCap;
  std::uint64_t optima_cap = kDefaultOptimaCap;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  /// Largest family for which optima are enumerated.
  std::uint64_t unique_family_cap = 2000;
  std::chrono::milliseconds timeout{0};
};

/// One suite bound to one claim, with the instances to run it on. Grid
/// suites read `grid`; CYCLE_LEMMA reads `cycles`; NO_GOOD_ORDERING reads
/// the n of each grid point.
struct SuiteSpec {
  SuiteId id;
  std::vector<GridPoint> grid;
  std::vector<CyclePoint> cycles;
  SuiteMode mode;
  Caps caps;

  /// Throws InvalidArgument on a malformed grid entry or an unseeded
  /// sampled mode.
  void validate() const;
};

enum class Status { kPass, kFail, kSkipped };
std::string_view to_string(Status s);

struct Verdict {
  SuiteId suite;
  std::string instance;
  Status status;
  std::string reason;
  /// Serializable evidence; always non-null for kFail.
  Json witness;
};

struct ConformanceReport {
  std::string tool_version;
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  std::vector<Verdict> verdicts;
  std::optional<double> wall_clock_ms;

  std::size_t count(Status s) const;
  bool passed() const { return count(Status::kFail) == 0; }
};

/// Runs one suite. Instances may run on `threads` workers; the verdict list
/// is in grid order regardless. Caps and timeouts yield kSkipped, never a
/// silent omission.
std::vector<Verdict> run_suite(const SuiteSpec& spec, int threads = 1);

/// The acceptance grid, with every sampled suite seeded from `seed`.
std::vector<SuiteSpec> default_grid(std::uint64_t seed = kDefaultSeed);

struct RunOptions {
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  bool record_timing = false;
};

ConformanceReport run_suites(const std::vector<SuiteSpec>& specs, const RunOptions& opts);

Json report_to_json(const ConformanceReport& rep);
ConformanceReport report_from_json(const Json& doc);
std::string report_to_csv(const ConformanceReport& rep);

/// The k=5, n=7 label table, row-major with y descending from 7 and x
/// ascending from 1.
extern const std::array<std::array<Label, 5>, 7> kTauTable5x7;

std::string tool_version();

}  // namespace ekr
