#pragma once

// Serial reference implementations. They take different routes from the
// parallel kernels (pairwise scans, std::next_permutation, materialized
// orderings) and exist for cross-checking in tests and benchmarks.

#include <cstdint>
#include <vector>

#include "ekr/cycle.hpp"
#include "ekr/genperm.hpp"
#include "ekr/solver.hpp"

namespace ekr::reference {

/// O(|P|^2) pairwise intersects() scan.
IntersectionGraph build_graph(const Instance& inst);

/// Walks S_k x S_n with std::next_permutation and tests meets() on each
/// materialized ordering.
std::uint64_t count_meeting_orderings(const GenPerm& g, const Instance& inst);

/// Per-ordering count of members of f that meet it, same walk as above.
std::vector<std::uint32_t> per_ordering_counts(const Family& f);

}  // namespace ekr::reference
