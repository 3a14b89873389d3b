#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ekr/genperm.hpp"

namespace ekr {

using Label = std::uint32_t;

/// Modulo with the cycle-method convention: a nonzero multiple of m maps to
/// m, zero maps to zero, anything else to its nonnegative residue.
std::int64_t cyclic_mod(std::int64_t a, std::int64_t m);

/// Label k * cyclic_mod(y - x, n) + x of the base ordering of [k] x [n].
/// Throws UseTranspose when k > n.
Label tau(std::uint32_t k, std::uint32_t n, OrderedPair p);

/// A bijection between [k] x [n] and labels 1..kn, read cyclically.
class CyclicOrdering {
 public:
  /// Builds an ordering from the pairs listed in label order (label i+1 at
  /// index i). Throws InvalidArgument unless every cell appears once.
  CyclicOrdering(std::uint32_t k, std::uint32_t n, std::span<const OrderedPair> pairs_in_order);

  std::uint32_t k() const { return k_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t size() const { return k_ * n_; }

  Label label_of(OrderedPair p) const { return label_[(p.x - 1) * n_ + (p.y - 1)]; }
  OrderedPair pair_at(Label l) const { return pairs_[l - 1]; }
  /// Pairs in label order.
  std::span<const OrderedPair> pairs() const { return pairs_; }

  friend bool operator==(const CyclicOrdering&, const CyclicOrdering&) = default;

 private:
  std::uint32_t k_;
  std::uint32_t n_;
  std::vector<OrderedPair> pairs_;
  std::vector<Label> label_;
};

/// The base ordering tau of [k] x [n], k <= n.
CyclicOrdering tau_ordering(std::uint32_t k, std::uint32_t n);

/// Two permutations (phi of [k], psi of [n]) stored as 1-indexed images.
class PermutationPair {
 public:
  PermutationPair(std::vector<std::uint32_t> phi, std::vector<std::uint32_t> psi);
  static PermutationPair identity(std::uint32_t k, std::uint32_t n);

  std::uint32_t k() const { return static_cast<std::uint32_t>(phi_.size()); }
  std::uint32_t n() const { return static_cast<std::uint32_t>(psi_.size()); }
  std::uint32_t phi(std::uint32_t x) const { return phi_[x - 1]; }
  std::uint32_t psi(std::uint32_t y) const { return psi_[y - 1]; }
  std::uint32_t phi_inv(std::uint32_t x) const { return phi_inv_[x - 1]; }
  std::uint32_t psi_inv(std::uint32_t y) const { return psi_inv_[y - 1]; }
  const std::vector<std::uint32_t>& phi() const { return phi_; }
  const std::vector<std::uint32_t>& psi() const { return psi_; }

  /// (pi o phi, rho o psi) where `outer` = (pi, rho).
  PermutationPair compose_after(const PermutationPair& outer) const;

  friend bool operator==(const PermutationPair& a, const PermutationPair& b) {
    return a.phi_ == b.phi_ && a.psi_ == b.psi_;
  }

 private:
  std::vector<std::uint32_t> phi_, psi_, phi_inv_, psi_inv_;
};

/// Label of p under tau_{phi,psi}, i.e. tau(phi^-1(x), psi^-1(y)).
Label tau_phi_psi(const PermutationPair& pp, OrderedPair p);
CyclicOrdering materialize(const PermutationPair& pp);

/// Start label of the first cyclic window of r consecutive labels that
/// repeats an x or a y coordinate; nullopt when the ordering is r-good.
std::optional<Label> first_bad_window(const CyclicOrdering& o, std::uint32_t r);
inline bool is_r_good(const CyclicOrdering& o, std::uint32_t r) {
  return !first_bad_window(o, r).has_value();
}

/// True iff the labels of the pairs of g form one cyclic run. Always true
/// for a single pair.
bool meets(const GenPerm& g, const CyclicOrdering& o);
/// Same test against tau_{phi,psi} without materializing it.
bool meets(const GenPerm& g, const PermutationPair& pp);

/// The member at labels start, start+1, ..., start+r-1 (cyclically).
GenPerm window_member(const CyclicOrdering& o, Label start, std::uint32_t r);

/// The kn members formed by all cyclic r-windows, in start-label order.
/// Throws PreconditionViolation (naming the bad window) unless o is r-good.
std::vector<GenPerm> r_intervals(const CyclicOrdering& o, std::uint32_t r);

/// Default cap on k!n! for operations that enumerate all of T_{k,n}.
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Permutation of [n] with the given Lehmer rank (lex order).
std::vector<std::uint32_t> permutation_at(std::uint32_t n, std::uint64_t index);

/// Index-addressable lex enumeration of S_k x S_n: pair i has
/// phi = permutation_at(k, i / n!) and psi = permutation_at(n, i % n!).
class PermutationPairSpace {
 public:
  PermutationPairSpace(std::uint32_t k, std::uint32_t n,
                       std::uint64_t cap = kDefaultEnumerationCap);

  std::uint32_t k() const { return k_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t size() const { return size_; }
  PermutationPair at(std::uint64_t index) const;

 private:
  std::uint32_t k_, n_;
  std::uint64_t n_fact_, size_;
};

/// Sequential single-consumer stream over PermutationPairSpace.
class PermutationPairStream {
 public:
  explicit PermutationPairStream(PermutationPairSpace space) : space_(space) {}
  std::optional<PermutationPair> next();

 private:
  PermutationPairSpace space_;
  std::uint64_t index_ = 0;
};

inline PermutationPairStream enumerate_t(std::uint32_t k, std::uint32_t n,
                                         std::uint64_t cap = kDefaultEnumerationCap) {
  return PermutationPairStream(PermutationPairSpace(k, n, cap));
}

/// Image of g under (x, y) -> (phi(x), psi(y)).
GenPerm relabel(const GenPerm& g, const PermutationPair& pp);

/// r!(k-r)!(n-r)!kn: the number of orderings in T_{k,n} each member meets.
std::uint64_t expected_meeting_count(const Instance& inst);

/// Checks k <= n and r <= k-1 for the tau machinery.
void require_cycle_instance(const Instance& inst);

/// Number of orderings in T_{k,n} that g meets, by enumeration of T
/// partitioned across `threads` workers.
std::uint64_t count_meeting_orderings(const GenPerm& g, const Instance& inst,
                                      std::uint64_t cap = kDefaultEnumerationCap,
                                      int threads = 1);

/// count_meeting_orderings for every member at once, indexed by rank. Each
/// ordering contributes its kn r-windows.
std::vector<std::uint64_t> meeting_counts_all(const Instance& inst,
                                              std::uint64_t cap = kDefaultEnumerationCap,
                                              int threads = 1);

struct SampledMeetingCount {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  /// hits / samples * k!n!, approximate.
  double estimate = 0.0;
};

/// Seeded sampling fallback for count_meeting_orderings beyond the cap.
SampledMeetingCount sample_meeting_orderings(const GenPerm& g, const Instance& inst,
                                             std::uint64_t samples, std::uint64_t seed);

/// Result of the cycle-lemma brute force over the m cyclic r-windows.
struct KatonaReport {
  std::uint32_t m = 0;
  std::uint32_t r = 0;
  std::uint32_t max_size = 0;
  std::uint64_t optima_count = 0;
  bool all_optima_are_stars = true;
  /// Window start positions (0-based) of a non-star optimum, when one exists.
  std::vector<std::uint32_t> non_star_witness;
  /// max_size == r, and when m > 2r every optimum is a star.
  bool lemma_holds = false;
};

/// Brute-forces the maximum intersecting subfamily of the cyclic r-windows
/// over a ground set listed in cyclic order (element ids < 64).
KatonaReport katona_verify(std::span<const std::uint32_t> cycle, std::uint32_t r);
KatonaReport katona_verify(const CyclicOrdering& o, std::uint32_t r);
/// Uses a seeded random cyclic order of [m].
KatonaReport katona_verify_random(std::uint32_t m, std::uint32_t r, std::uint64_t seed);

/// Exhaustively checks all cyclic orderings of [n] x [n] (up to rotation)
/// for n-goodness; true iff none is n-good. n must be 2 or 3.
bool no_good_ordering_exists(std::uint32_t n);

}  // namespace ekr
