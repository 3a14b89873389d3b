#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ekr/bitset.hpp"
#include "ekr/cycle.hpp"
#include "ekr/genperm.hpp"

namespace ekr {

inline constexpr std::uint64_t kDefaultVertexCap = 20'000;
inline constexpr std::uint64_t kDefaultOptimaCap = 100'000;

/// Vertices are members of P_{k,r,n} by rank; edges join distinct
/// intersecting members.
class IntersectionGraph {
 public:
  IntersectionGraph(Instance inst, std::vector<Bitset> rows);

  const Instance& instance() const { return inst_; }
  std::size_t vertex_count() const { return rows_.size(); }
  const Bitset& neighbours(std::size_t v) const { return rows_[v]; }
  std::size_t degree(std::size_t v) const { return rows_[v].count(); }
  std::uint64_t edge_count() const;

  friend bool operator==(const IntersectionGraph&, const IntersectionGraph&) = default;

 private:
  Instance inst_;
  std::vector<Bitset> rows_;
};

/// Row i is the union of the stars through the pairs of member i, minus i.
IntersectionGraph build_graph(const Instance& inst, std::uint64_t vertex_cap = kDefaultVertexCap,
                              int threads = 1);

/// Undirected DIMACS text with vertices numbered rank + 1.
void write_dimacs(std::ostream& os, const IntersectionGraph& g);

struct SolveOptions {
  /// Search starts from this size and only accepts cliques at least as large.
  std::optional<std::uint64_t> seed_lower_bound;
  /// Zero disables the timeout.
  std::chrono::milliseconds timeout{0};
};

struct SolveReport {
  Instance instance;
  std::uint64_t max_size = 0;
  Family witness;
  /// False when the search hit its timeout; max_size is then a lower bound.
  bool exact = true;
  std::uint64_t star_bound = 0;
  std::optional<std::uint64_t> optima_count;
  bool optima_capped = false;
  std::optional<bool> all_optima_are_stars;
  /// Centres of the optima, in optima order, when enumerated.
  std::vector<OrderedPair> optima_centres;
  /// Set by the verification step: an optimum that is not a star, or a
  /// size that disagrees with the star bound.
  std::optional<Family> violation;
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};
  /// The solve ran on the transposed instance (set by callers that reduce).
  bool transposed = false;

  explicit SolveReport(const Instance& inst) : instance(inst), witness(inst) {}
  /// "PASS", "VIOLATION" or "INCOMPLETE".
  std::string verdict() const;
};

/// Exact maximum clique by bitset branch and bound: greedy colouring
/// bounds over a degeneracy vertex order, ties broken by lowest rank.
SolveReport max_clique(const IntersectionGraph& g, const SolveOptions& opts = {});

struct OptimaResult {
  std::vector<Family> optima;
  bool capped = false;
  std::uint64_t nodes = 0;
};

/// Every clique of exactly `optimum` vertices, lexicographically by member
/// rank sequence, stopping after `cap` cliques.
OptimaResult enumerate_optima(const IntersectionGraph& g, std::uint64_t optimum,
                              std::uint64_t cap = kDefaultOptimaCap);

struct VerifyOptions {
  std::uint64_t vertex_cap = kDefaultVertexCap;
  std::uint64_t optima_cap = kDefaultOptimaCap;
  std::chrono::milliseconds timeout{0};
  int threads = 1;
};

/// Solves without seeding, enumerates all optima, classifies each one.
SolveReport verify_theorem(const Instance& inst, const VerifyOptions& opts = {});

/// Number of distinct stars of P_{k,r,n} (kn except when two centres
/// share a star, as in P_{2,2,2}).
std::uint64_t distinct_star_count(const Instance& inst);

struct DoubleCountOptions {
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  /// Used when k!n! exceeds the cap.
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct DoubleCountCertificate {
  Instance instance;
  std::uint64_t family_size = 0;
  bool exact = true;
  std::optional<std::uint64_t> seed;
  /// Orderings summed over: k!n! in exact mode, the sample count otherwise.
  std::uint64_t orderings = 0;
  /// Members of the family meeting each ordering, in enumeration order.
  std::vector<std::uint32_t> per_ordering_counts;
  std::uint64_t total_incidence = 0;
  /// r times the number of orderings.
  std::uint64_t bound_lhs = 0;
  std::uint64_t max_per_ordering = 0;
  /// r!(k-r)!(n-r)!kn * |family|, compared against total in exact mode.
  std::uint64_t expected_total = 0;
  /// floor(k!n!r / (r!(k-r)!(n-r)!kn)); nullopt if it exceeds 64 bits.
  std::optional<std::uint64_t> implied_bound;
  /// Every per-ordering count is at most r.
  bool per_ordering_within_r = true;
  /// total_incidence == expected_total (exact mode only).
  std::optional<bool> total_matches;

  explicit DoubleCountCertificate(const Instance& inst) : instance(inst) {}
  bool holds() const { return per_ordering_within_r && total_matches.value_or(true); }
};

/// Streams the incidence matrix between members and T_{k,n} one ordering at
/// a time. Throws InvalidArgument naming a disjoint pair when f is not
/// intersecting.
DoubleCountCertificate double_count_check(const Family& f, const DoubleCountOptions& opts = {});

}  // namespace ekr
