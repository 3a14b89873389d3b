#include "ekr/cycle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <string>

#include "ekr/arith.hpp"
#include "ekr/error.hpp"
#include "ekr/rng.hpp"

namespace ekr {

std::int64_t cyclic_mod(std::int64_t a, std::int64_t m) {
  if (m <= 0) throw InvalidArgument("modulus must be positive");
  if (a == 0) return 0;
  const auto res = ((a % m) + m) % m;
  return res == 0 ? m : res;
}

Label tau(std::uint32_t k, std::uint32_t n, OrderedPair p) {
  if (k > n) throw UseTranspose("tau needs k <= n; transpose the instance first");
  if (p.x < 1 || p.x > k || p.y < 1 || p.y > n) throw InvalidArgument("pair outside [k]x[n]");
  const auto diff = static_cast<std::int64_t>(p.y) - static_cast<std::int64_t>(p.x);
  return static_cast<Label>(k * cyclic_mod(diff, n) + p.x);
}

CyclicOrdering::CyclicOrdering(std::uint32_t k, std::uint32_t n,
                               std::span<const OrderedPair> pairs_in_order)
    : k_(k), n_(n), pairs_(pairs_in_order.begin(), pairs_in_order.end()), label_(k * n, 0) {
  if (k == 0 || n == 0) throw InvalidArgument("ordering needs k, n >= 1");
  if (pairs_.size() != static_cast<std::size_t>(k) * n)
    throw InvalidArgument("ordering must list exactly k*n pairs");
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto p = pairs_[i];
    if (p.x < 1 || p.x > k || p.y < 1 || p.y > n)
      throw InvalidArgument("ordering pair outside [k]x[n]");
    auto& slot = label_[(p.x - 1) * n + (p.y - 1)];
    if (slot != 0)
      throw InvalidArgument("pair (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                            ") listed twice");
    slot = static_cast<Label>(i + 1);
  }
}

CyclicOrdering tau_ordering(std::uint32_t k, std::uint32_t n) {
  return materialize(PermutationPair::identity(k, n));
}

namespace {

std::vector<std::uint32_t> invert(const std::vector<std::uint32_t>& p) {
  std::vector<std::uint32_t> inv(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1 || p[i] > p.size() || inv[p[i] - 1] != 0)
      throw InvalidArgument("not a permutation");
    inv[p[i] - 1] = static_cast<std::uint32_t>(i + 1);
  }
  return inv;
}

}  // namespace

PermutationPair::PermutationPair(std::vector<std::uint32_t> phi, std::vector<std::uint32_t> psi)
    : phi_(std::move(phi)), psi_(std::move(psi)), phi_inv_(invert(phi_)), psi_inv_(invert(psi_)) {
  if (phi_.empty() || psi_.empty()) throw InvalidArgument("empty permutation");
}

PermutationPair PermutationPair::identity(std::uint32_t k, std::uint32_t n) {
  std::vector<std::uint32_t> phi(k), psi(n);
  std::iota(phi.begin(), phi.end(), 1U);
  std::iota(psi.begin(), psi.end(), 1U);
  return {std::move(phi), std::move(psi)};
}

PermutationPair PermutationPair::compose_after(const PermutationPair& outer) const {
  if (outer.k() != k() || outer.n() != n()) throw InvalidArgument("composition size mismatch");
  std::vector<std::uint32_t> phi(k()), psi(n());
  for (std::uint32_t i = 1; i <= k(); ++i) phi[i - 1] = outer.phi(this->phi(i));
  for (std::uint32_t j = 1; j <= n(); ++j) psi[j - 1] = outer.psi(this->psi(j));
  return {std::move(phi), std::move(psi)};
}

Label tau_phi_psi(const PermutationPair& pp, OrderedPair p) {
  return tau(pp.k(), pp.n(), {pp.phi_inv(p.x), pp.psi_inv(p.y)});
}

CyclicOrdering materialize(const PermutationPair& pp) {
  const auto k = pp.k(), n = pp.n();
  if (k > n) throw UseTranspose("tau_{phi,psi} needs k <= n; transpose the instance first");
  std::vector<OrderedPair> in_order(k * n);
  for (std::uint32_t i = 1; i <= k; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      in_order[tau(k, n, {i, j}) - 1] = {pp.phi(i), pp.psi(j)};
  return CyclicOrdering(k, n, in_order);
}

std::optional<Label> first_bad_window(const CyclicOrdering& o, std::uint32_t r) {
  const auto m = o.size();
  if (r == 0 || r > m) throw InvalidArgument("window length must be in [1, kn]");
  std::vector<std::uint32_t> x_count(o.k() + 1, 0), y_count(o.n() + 1, 0);
  std::uint32_t repeats = 0;
  auto add = [&](OrderedPair p, int delta) {
    auto bump = [&](std::uint32_t& c) {
      if (delta > 0) {
        if (c++ >= 1) ++repeats;
      } else {
        if (--c >= 1) --repeats;
      }
    };
    bump(x_count[p.x]);
    bump(y_count[p.y]);
  };
  for (Label l = 1; l <= r; ++l) add(o.pair_at(l), +1);
  for (Label start = 1; start <= m; ++start) {
    if (repeats > 0) return start;
    if (start == m) break;
    add(o.pair_at(start), -1);
    add(o.pair_at((start + r - 1) % m + 1), +1);
  }
  return std::nullopt;
}

namespace {

bool labels_consecutive(std::vector<Label>& labels, std::uint32_t m) {
  const auto r = labels.size();
  if (r <= 1) return true;
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) return false;
  if (r >= m) return true;
  // A proper subset of the cycle is one run iff exactly r-1 of its labels
  // have their cyclic successor also in the set.
  std::size_t successors = 0;
  for (std::size_t i = 0; i + 1 < r; ++i)
    if (labels[i + 1] == labels[i] + 1) ++successors;
  if (labels.back() == m && labels.front() == 1) ++successors;
  return successors == r - 1;
}

}  // namespace

bool meets(const GenPerm& g, const CyclicOrdering& o) {
  std::vector<Label> labels;
  labels.reserve(g.size());
  for (auto p : g.pairs()) {
    if (p.x > o.k() || p.y > o.n()) throw InvalidArgument("member outside the ordered ground set");
    labels.push_back(o.label_of(p));
  }
  return labels_consecutive(labels, o.size());
}

bool meets(const GenPerm& g, const PermutationPair& pp) {
  std::vector<Label> labels;
  labels.reserve(g.size());
  for (auto p : g.pairs()) labels.push_back(tau_phi_psi(pp, p));
  return labels_consecutive(labels, pp.k() * pp.n());
}

GenPerm window_member(const CyclicOrdering& o, Label start, std::uint32_t r) {
  const auto m = o.size();
  std::vector<OrderedPair> pairs;
  pairs.reserve(r);
  for (std::uint32_t i = 0; i < r; ++i) pairs.push_back(o.pair_at((start - 1 + i) % m + 1));
  return GenPerm(std::move(pairs));
}

std::vector<GenPerm> r_intervals(const CyclicOrdering& o, std::uint32_t r) {
  if (auto bad = first_bad_window(o, r))
    throw PreconditionViolation("ordering is not " + std::to_string(r) +
                                "-good: window starting at label " + std::to_string(*bad));
  std::vector<GenPerm> out;
  out.reserve(o.size());
  for (Label s = 1; s <= o.size(); ++s) out.push_back(window_member(o, s, r));
  return out;
}

std::vector<std::uint32_t> permutation_at(std::uint32_t n, std::uint64_t index) {
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 1U);
  std::vector<std::uint32_t> out;
  out.reserve(n);
  for (std::uint32_t i = n; i >= 1; --i) {
    const auto place = factorial_or_throw(i - 1);
    const auto digit = index / place;
    index %= place;
    out.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return out;
}

PermutationPairSpace::PermutationPairSpace(std::uint32_t k, std::uint32_t n, std::uint64_t cap)
    : k_(k), n_(n) {
  if (k == 0 || n == 0) throw InvalidArgument("k, n must be positive");
  auto kf = factorial(k);
  auto nf = factorial(n);
  std::optional<std::uint64_t> total;
  if (kf && nf) total = checked_mul(*kf, *nf);
  if (!total) throw InstanceTooLarge("k!n! overflows 64 bits");
  if (*total > cap)
    throw InstanceTooLarge("k!n! = " + std::to_string(*total) + " exceeds enumeration cap " +
                           std::to_string(cap));
  n_fact_ = *nf;
  size_ = *total;
}

PermutationPair PermutationPairSpace::at(std::uint64_t index) const {
  if (index >= size_) throw InvalidArgument("permutation pair index out of range");
  return {permutation_at(k_, index / n_fact_), permutation_at(n_, index % n_fact_)};
}

std::optional<PermutationPair> PermutationPairStream::next() {
  if (index_ >= space_.size()) return std::nullopt;
  return space_.at(index_++);
}

GenPerm relabel(const GenPerm& g, const PermutationPair& pp) {
  std::vector<OrderedPair> out;
  out.reserve(g.size());
  for (auto p : g.pairs()) {
    if (p.x > pp.k() || p.y > pp.n()) throw InvalidArgument("member outside relabelled ground set");
    out.push_back({pp.phi(p.x), pp.psi(p.y)});
  }
  return GenPerm(std::move(out));
}

void require_cycle_instance(const Instance& inst) {
  if (inst.k() > inst.n())
    throw UseTranspose("cycle method needs k <= n; use the transpose " +
                       inst.transposed().to_string());
  if (inst.r() + 1 > inst.k())
    throw PreconditionViolation("cycle method needs r <= k-1 at " + inst.to_string());
}

std::uint64_t expected_meeting_count(const Instance& inst) {
  const auto k = inst.k(), r = inst.r(), n = inst.n();
  std::uint64_t v = factorial_or_throw(r);
  v = mul_or_throw(v, factorial_or_throw(k - r));
  v = mul_or_throw(v, factorial_or_throw(n - r));
  return mul_or_throw(v, std::uint64_t{k} * n);
}

std::uint64_t count_meeting_orderings(const GenPerm& g, const Instance& inst, std::uint64_t cap,
                                      int threads) {
  require_cycle_instance(inst);
  if (!g.fits(inst)) throw InvalidArgument("member not in P" + inst.to_string());
  const PermutationPairSpace space(inst.k(), inst.n(), cap);
  const auto total = static_cast<std::int64_t>(space.size());
  std::uint64_t hits = 0;
#pragma omp parallel for num_threads(threads) reduction(+ : hits) schedule(static)
  for (std::int64_t i = 0; i < total; ++i)
    if (meets(g, space.at(static_cast<std::uint64_t>(i)))) ++hits;
  return hits;
}

std::vector<std::uint64_t> meeting_counts_all(const Instance& inst, std::uint64_t cap,
                                              int threads) {
  require_cycle_instance(inst);
  const PermutationPairSpace space(inst.k(), inst.n(), cap);
  const auto size = family_size(inst);
  const auto total = static_cast<std::int64_t>(space.size());
  const auto r = inst.r();
  std::vector<std::uint64_t> counts(size, 0);
#pragma omp parallel num_threads(threads)
  {
    std::vector<std::uint64_t> local(size, 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
      const auto o = materialize(space.at(static_cast<std::uint64_t>(i)));
      for (Label s = 1; s <= o.size(); ++s) ++local[rank(window_member(o, s, r), inst)];
    }
#pragma omp critical
    for (std::size_t j = 0; j < size; ++j) counts[j] += local[j];
  }
  return counts;
}

SampledMeetingCount sample_meeting_orderings(const GenPerm& g, const Instance& inst,
                                             std::uint64_t samples, std::uint64_t seed) {
  require_cycle_instance(inst);
  if (!g.fits(inst)) throw InvalidArgument("member not in P" + inst.to_string());
  SampledMeetingCount out;
  out.samples = samples;
  for (std::uint64_t s = 0; s < samples; ++s) {
    CounterRng rng(derive_seed(seed, {s}));
    auto phi = random_permutation(inst.k(), rng);
    auto psi = random_permutation(inst.n(), rng);
    if (meets(g, PermutationPair(std::move(phi), std::move(psi)))) ++out.hits;
  }
  long double space = 1.0L;
  for (std::uint32_t i = 2; i <= inst.k(); ++i) space *= i;
  for (std::uint32_t i = 2; i <= inst.n(); ++i) space *= i;
  out.estimate = samples ? static_cast<double>(space * out.hits / samples) : 0.0;
  return out;
}

KatonaReport katona_verify(std::span<const std::uint32_t> cycle, std::uint32_t r) {
  const auto m = static_cast<std::uint32_t>(cycle.size());
  if (r == 0 || m < 2 * r)
    throw PreconditionViolation("cycle lemma needs a cycle of at least 2r elements");
  if (m > 64) throw InstanceTooLarge("cycle lemma brute force is limited to 64 elements");
  for (auto e : cycle)
    if (e >= 64) throw InvalidArgument("cycle element ids must be below 64");

  using Mask = std::uint64_t;
  std::vector<Mask> window(m, 0);
  for (std::uint32_t s = 0; s < m; ++s)
    for (std::uint32_t i = 0; i < r; ++i) window[s] |= Mask{1} << cycle[(s + i) % m];
  if (std::popcount(std::accumulate(window.begin(), window.end(), Mask{0}, std::bit_or<>())) !=
      static_cast<int>(m))
    throw InvalidArgument("cycle elements must be distinct");

  std::vector<Mask> adj(m, 0);
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b)
      if (a != b && (window[a] & window[b])) adj[a] |= Mask{1} << b;

  // Pass 1 finds the maximum; pass 2 lists every family of that size.
  std::uint32_t best = 0;
  std::function<void(std::uint32_t, Mask)> grow = [&](std::uint32_t depth, Mask cand) {
    if (depth > best) best = depth;
    while (cand) {
      if (depth + static_cast<std::uint32_t>(std::popcount(cand)) <= best) return;
      const auto v = static_cast<std::uint32_t>(std::countr_zero(cand));
      cand &= cand - 1;
      grow(depth + 1, cand & adj[v]);
    }
  };
  const Mask all = m == 64 ? ~Mask{0} : (Mask{1} << m) - 1;
  grow(0, all);

  KatonaReport rep;
  rep.m = m;
  rep.r = r;
  rep.max_size = best;
  std::vector<std::uint32_t> chosen;
  std::function<void(Mask)> list = [&](Mask cand) {
    if (chosen.size() == best) {
      ++rep.optima_count;
      Mask common = ~Mask{0};
      for (auto w : chosen) common &= window[w];
      if (common == 0 && rep.all_optima_are_stars) {
        rep.all_optima_are_stars = false;
        rep.non_star_witness = chosen;
      }
      return;
    }
    while (cand) {
      if (chosen.size() + static_cast<std::size_t>(std::popcount(cand)) < best) return;
      const auto v = static_cast<std::uint32_t>(std::countr_zero(cand));
      cand &= cand - 1;
      chosen.push_back(v);
      list(cand & adj[v]);
      chosen.pop_back();
    }
  };
  list(all);

  rep.lemma_holds = rep.max_size == r && (m == 2 * r || rep.all_optima_are_stars);
  return rep;
}

KatonaReport katona_verify(const CyclicOrdering& o, std::uint32_t r) {
  std::vector<std::uint32_t> cycle;
  cycle.reserve(o.size());
  for (auto p : o.pairs()) cycle.push_back((p.x - 1) * o.n() + (p.y - 1));
  return katona_verify(cycle, r);
}

KatonaReport katona_verify_random(std::uint32_t m, std::uint32_t r, std::uint64_t seed) {
  CounterRng rng(seed);
  auto order = random_permutation(m, rng);
  for (auto& e : order) --e;
  return katona_verify(order, r);
}

bool no_good_ordering_exists(std::uint32_t n) {
  if (n < 2) throw InvalidArgument("nonexistence search needs n >= 2");
  if (n > 3) throw InstanceTooLarge("nonexistence search is limited to n <= 3");
  // Rotations are fixed by pinning (1,1) to label 1.
  std::vector<OrderedPair> rest;
  for (std::uint32_t x = 1; x <= n; ++x)
    for (std::uint32_t y = 1; y <= n; ++y)
      if (x != 1 || y != 1) rest.push_back({x, y});
  std::vector<OrderedPair> order(n * n);
  order[0] = {1, 1};
  do {
    std::copy(rest.begin(), rest.end(), order.begin() + 1);
    if (is_r_good(CyclicOrdering(n, n, order), n)) return false;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return true;
}

}  // namespace ekr
