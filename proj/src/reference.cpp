#include "ekr/reference.hpp"

#include <algorithm>
#include <numeric>

namespace ekr::reference {

IntersectionGraph build_graph(const Instance& inst) {
  const auto size = family_size(inst);
  std::vector<GenPerm> members;
  members.reserve(size);
  for (const auto& g : enumerate(inst)) members.push_back(g);
  std::vector<Bitset> rows(size, Bitset(size));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      if (intersects(members[i], members[j])) {
        rows[i].set(j);
        rows[j].set(i);
      }
  return IntersectionGraph(inst, std::move(rows));
}

namespace {

template <typename Visit>
void for_each_permutation_pair(std::uint32_t k, std::uint32_t n, Visit&& visit) {
  std::vector<std::uint32_t> phi(k), psi(n);
  std::iota(phi.begin(), phi.end(), 1U);
  do {
    std::iota(psi.begin(), psi.end(), 1U);
    do visit(PermutationPair(phi, psi));
    while (std::next_permutation(psi.begin(), psi.end()));
  } while (std::next_permutation(phi.begin(), phi.end()));
}

}  // namespace

std::uint64_t count_meeting_orderings(const GenPerm& g, const Instance& inst) {
  require_cycle_instance(inst);
  std::uint64_t hits = 0;
  for_each_permutation_pair(inst.k(), inst.n(), [&](const PermutationPair& pp) {
    if (meets(g, materialize(pp))) ++hits;
  });
  return hits;
}

std::vector<std::uint32_t> per_ordering_counts(const Family& f) {
  const auto& inst = f.instance();
  require_cycle_instance(inst);
  const auto members = f.members();
  std::vector<std::uint32_t> counts;
  for_each_permutation_pair(inst.k(), inst.n(), [&](const PermutationPair& pp) {
    const auto o = materialize(pp);
    counts.push_back(static_cast<std::uint32_t>(
        std::count_if(members.begin(), members.end(), [&](const GenPerm& m) { return meets(m, o); })));
  });
  return counts;
}

}  // namespace ekr::reference
