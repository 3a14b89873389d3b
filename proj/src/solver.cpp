#include "ekr/solver.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ekr/arith.hpp"
#include "ekr/error.hpp"
#include "ekr/rng.hpp"

namespace ekr {

IntersectionGraph::IntersectionGraph(Instance inst, std::vector<Bitset> rows)
    : inst_(inst), rows_(std::move(rows)) {
  const auto n = family_size(inst_);
  if (rows_.size() != n) throw InvalidArgument("graph needs one row per member");
  for (const auto& row : rows_)
    if (row.size() != n) throw InvalidArgument("graph row has the wrong length");
}

std::uint64_t IntersectionGraph::edge_count() const {
  std::uint64_t twice = 0;
  for (const auto& row : rows_) twice += row.count();
  return twice / 2;
}

IntersectionGraph build_graph(const Instance& inst, std::uint64_t vertex_cap, int threads) {
  const auto size = family_size(inst);
  if (size > vertex_cap)
    throw InstanceTooLarge("P" + inst.to_string() + " has " + std::to_string(size) +
                           " members, above the vertex cap " + std::to_string(vertex_cap));
  const auto k = inst.k(), n = inst.n();
  const auto total = static_cast<std::int64_t>(size);

  std::vector<GenPerm> members(size);
  std::vector<Bitset> stars(static_cast<std::size_t>(k) * n, Bitset(size));
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::int64_t i = 0; i < total; ++i) members[i] = unrank(static_cast<Rank>(i), inst);
  for (std::size_t i = 0; i < size; ++i)
    for (auto p : members[i].pairs()) stars[(p.x - 1) * n + (p.y - 1)].set(i);

  std::vector<Bitset> rows(size, Bitset(size));
#pragma omp parallel for num_threads(threads) schedule(dynamic, 64)
  for (std::int64_t i = 0; i < total; ++i) {
    auto& row = rows[i];
    for (auto p : members[i].pairs()) row |= stars[(p.x - 1) * n + (p.y - 1)];
    row.reset(static_cast<std::size_t>(i));
  }
  return IntersectionGraph(inst, std::move(rows));
}

void write_dimacs(std::ostream& os, const IntersectionGraph& g) {
  const auto& inst = g.instance();
  os << "c intersection graph of P(k=" << inst.k() << ",r=" << inst.r() << ",n=" << inst.n()
     << "), vertex v is the member of rank v-1\n";
  os << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const auto& row = g.neighbours(i);
    for (auto j = row.find_next(i + 1); j != Bitset::npos; j = row.find_next(j + 1))
      os << "e " << i + 1 << ' ' << j + 1 << '\n';
  }
}

std::string SolveReport::verdict() const {
  if (violation) return "VIOLATION";
  if (!exact || optima_capped) return "INCOMPLETE";
  if (max_size != star_bound) return "VIOLATION";
  return "PASS";
}

namespace {

using Clock = std::chrono::steady_clock;

/// Smallest-last order, returned with the last-removed vertex first.
std::vector<std::size_t> degeneracy_order(const IntersectionGraph& g) {
  const auto n = g.vertex_count();
  std::vector<std::size_t> degree(n);
  std::set<std::pair<std::size_t, std::size_t>> queue;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    queue.emplace(degree[v], v);
  }
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!queue.empty()) {
    const auto v = queue.begin()->second;
    queue.erase(queue.begin());
    removed[v] = true;
    order.push_back(v);
    const auto& row = g.neighbours(v);
    for (auto u = row.find_first(); u != Bitset::npos; u = row.find_next(u + 1)) {
      if (removed[u]) continue;
      queue.erase({degree[u], u});
      queue.emplace(--degree[u], u);
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

class CliqueSearch {
 public:
  CliqueSearch(const IntersectionGraph& g, const SolveOptions& opts)
      : order_(degeneracy_order(g)), adj_(g.vertex_count(), Bitset(g.vertex_count())),
        timeout_(opts.timeout) {
    const auto n = g.vertex_count();
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[order_[i]] = i;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = g.neighbours(order_[i]);
      for (auto u = row.find_first(); u != Bitset::npos; u = row.find_next(u + 1))
        adj_[i].set(position[u]);
    }
    if (opts.seed_lower_bound && *opts.seed_lower_bound > 0) best_ = *opts.seed_lower_bound - 1;
  }

  void run() {
    start_ = Clock::now();
    Bitset all(adj_.size());
    all.set_all();
    if (all.any()) expand(all);
  }

  /// Best clique as original vertex ids, sorted.
  std::vector<std::size_t> best_clique() const {
    std::vector<std::size_t> out;
    for (auto v : best_clique_) out.push_back(order_[v]);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::uint64_t nodes() const { return nodes_; }
  bool timed_out() const { return timed_out_; }

 private:
  void expand(Bitset candidates) {
    ++nodes_;
    if (timeout_.count() > 0 && (nodes_ & 1023) == 0 && Clock::now() - start_ > timeout_)
      timed_out_ = true;
    if (timed_out_) return;

    // Greedy sequential colouring; only vertices whose colour can still
    // beat the incumbent become branching candidates.
    std::vector<std::size_t> branch;
    std::vector<std::size_t> colour;
    const std::size_t kmin = best_ + 1 > current_.size() ? best_ + 1 - current_.size() : 1;
    Bitset uncoloured = candidates;
    std::size_t c = 0;
    while (uncoloured.any()) {
      ++c;
      Bitset available = uncoloured;
      for (auto v = available.find_first(); v != Bitset::npos; v = available.find_next(v + 1)) {
        uncoloured.reset(v);
        available.subtract(adj_[v]);
        if (c >= kmin) {
          branch.push_back(v);
          colour.push_back(c);
        }
      }
    }

    for (std::size_t i = branch.size(); i-- > 0;) {
      if (current_.size() + colour[i] <= best_ || timed_out_) return;
      const auto v = branch[i];
      current_.push_back(v);
      Bitset next = candidates;
      next &= adj_[v];
      if (next.none()) {
        if (current_.size() > best_) {
          best_ = current_.size();
          best_clique_ = current_;
        }
      } else {
        expand(std::move(next));
      }
      current_.pop_back();
      candidates.reset(v);
    }
  }

  std::vector<std::size_t> order_;
  std::vector<Bitset> adj_;
  std::chrono::milliseconds timeout_;
  Clock::time_point start_;
  std::size_t best_ = 0;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_clique_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

std::size_t colour_bound(const std::vector<Bitset>& adj, const Bitset& candidates) {
  Bitset uncoloured = candidates;
  std::size_t colours = 0;
  while (uncoloured.any()) {
    ++colours;
    Bitset available = uncoloured;
    for (auto v = available.find_first(); v != Bitset::npos; v = available.find_next(v + 1)) {
      uncoloured.reset(v);
      available.subtract(adj[v]);
    }
  }
  return colours;
}

}  // namespace

SolveReport max_clique(const IntersectionGraph& g, const SolveOptions& opts) {
  const auto began = Clock::now();
  SolveReport report(g.instance());
  report.star_bound = star_bound(g.instance());

  CliqueSearch search(g, opts);
  search.run();
  auto clique = search.best_clique();
  std::uint64_t nodes = search.nodes();

  if (clique.empty() && opts.seed_lower_bound && *opts.seed_lower_bound > 1 &&
      !search.timed_out()) {
    // The seed overshot the optimum; fall back to an unseeded search.
    CliqueSearch plain(g, SolveOptions{std::nullopt, opts.timeout});
    plain.run();
    clique = plain.best_clique();
    nodes += plain.nodes();
    report.exact = !plain.timed_out();
  } else {
    report.exact = !search.timed_out();
  }

  for (auto v : clique) report.witness.insert_rank(v);
  report.max_size = clique.size();
  report.nodes_explored = nodes;
  report.elapsed = Clock::now() - began;
  return report;
}

OptimaResult enumerate_optima(const IntersectionGraph& g, std::uint64_t optimum,
                              std::uint64_t cap) {
  OptimaResult result;
  const auto n = g.vertex_count();
  if (optimum == 0 || n == 0) return result;
  std::vector<Bitset> adj;
  adj.reserve(n);
  for (std::size_t v = 0; v < n; ++v) adj.push_back(g.neighbours(v));

  std::vector<std::size_t> chosen;
  auto record = [&] {
    Family f(g.instance());
    for (auto v : chosen) f.insert_rank(v);
    result.optima.push_back(std::move(f));
    if (result.optima.size() >= cap) result.capped = true;
  };

  // Candidates are always greater than the last chosen vertex, so cliques
  // come out as increasing rank sequences in lexicographic order.
  auto list = [&](auto&& self, Bitset candidates) -> void {
    ++result.nodes;
    if (chosen.size() == optimum) {
      record();
      return;
    }
    const auto need = optimum - chosen.size();
    if (candidates.count() < need || colour_bound(adj, candidates) < need) return;
    for (auto v = candidates.find_first(); v != Bitset::npos; v = candidates.find_next(v + 1)) {
      if (result.capped) return;
      candidates.reset(v);
      Bitset next = candidates;
      next &= adj[v];
      chosen.push_back(v);
      self(self, std::move(next));
      chosen.pop_back();
      if (candidates.count() + 1 < need) return;
    }
  };
  Bitset all(n);
  all.set_all();
  list(list, std::move(all));
  return result;
}

std::uint64_t distinct_star_count(const Instance& inst) {
  std::set<std::vector<Rank>> seen;
  for (std::uint32_t a = 1; a <= inst.k(); ++a)
    for (std::uint32_t b = 1; b <= inst.n(); ++b) seen.insert(star(inst, {a, b}).ranks());
  return seen.size();
}

SolveReport verify_theorem(const Instance& inst, const VerifyOptions& opts) {
  const auto began = Clock::now();
  const auto graph = build_graph(inst, opts.vertex_cap, opts.threads);
  auto report = max_clique(graph, SolveOptions{std::nullopt, opts.timeout});
  if (!report.exact) return report;

  if (report.max_size != report.star_bound) {
    report.violation = report.witness;
    report.elapsed = Clock::now() - began;
    return report;
  }

  auto optima = enumerate_optima(graph, report.max_size, opts.optima_cap);
  report.nodes_explored += optima.nodes;
  report.optima_count = optima.optima.size();
  report.optima_capped = optima.capped;
  bool all_stars = true;
  for (const auto& f : optima.optima) {
    if (!is_intersecting_family(f) || f.size() != report.max_size) {
      all_stars = false;
      if (!report.violation) report.violation = f;
      continue;
    }
    if (auto c = classify_star(f)) {
      report.optima_centres.push_back(*c);
    } else {
      all_stars = false;
      if (!report.violation) report.violation = f;
    }
  }
  report.all_optima_are_stars = all_stars;
  // Every star is intersecting and of optimum size, so an uncapped run must
  // find each distinct star once.
  if (all_stars && !optima.capped && *report.optima_count != distinct_star_count(inst) &&
      !report.violation)
    report.violation = report.witness;
  report.elapsed = Clock::now() - began;
  return report;
}

namespace {

std::optional<std::uint64_t> implied_bound(const Instance& inst) {
  using U = unsigned __int128;
  const auto k = inst.k(), r = inst.r(), n = inst.n();
  auto fact = [](std::uint32_t m) -> std::optional<U> {
    U v = 1;
    for (std::uint32_t i = 2; i <= m; ++i) {
      if (v > (~U{0}) / i) return std::nullopt;
      v *= i;
    }
    return v;
  };
  const auto kf = fact(k), nf = fact(n), rf = fact(r), krf = fact(k - r), nrf = fact(n - r);
  if (!kf || !nf || !rf || !krf || !nrf) return std::nullopt;
  if (*kf != 0 && *nf > (~U{0}) / *kf / r) return std::nullopt;
  const U numerator = *kf * *nf * r;
  const U denominator = *rf * *krf * *nrf * k * n;
  const U q = numerator / denominator;
  if (q > UINT64_MAX) return std::nullopt;
  return static_cast<std::uint64_t>(q);
}

}  // namespace

DoubleCountCertificate double_count_check(const Family& f, const DoubleCountOptions& opts) {
  const auto& inst = f.instance();
  require_cycle_instance(inst);
  if (auto bad = find_disjoint_pair(f))
    throw InvalidArgument("family is not intersecting: members " +
                          unrank(bad->first, inst).to_string() + " and " +
                          unrank(bad->second, inst).to_string() + " are disjoint");

  DoubleCountCertificate cert(inst);
  cert.family_size = f.size();
  cert.implied_bound = implied_bound(inst);
  const auto r = inst.r();

  std::optional<PermutationPairSpace> space;
  try {
    space.emplace(inst.k(), inst.n(), opts.enumeration_cap);
  } catch (const InstanceTooLarge&) {
    cert.exact = false;
    cert.seed = opts.seed;
  }
  cert.orderings = cert.exact ? space->size() : opts.samples;
  cert.per_ordering_counts.assign(cert.orderings, 0);

  const auto total = static_cast<std::int64_t>(cert.orderings);
  const auto k = inst.k(), n = inst.n();
#pragma omp parallel for num_threads(opts.threads) schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    auto pp = [&] {
      if (space) return space->at(idx);
      CounterRng rng(derive_seed(opts.seed, {idx}));
      auto phi = random_permutation(k, rng);
      auto psi = random_permutation(n, rng);
      return PermutationPair(std::move(phi), std::move(psi));
    }();
    // Column idx of the incidence matrix: the kn r-windows of the ordering.
    const auto o = materialize(pp);
    std::uint32_t hits = 0;
    for (Label s = 1; s <= o.size(); ++s)
      if (f.contains_rank(rank(window_member(o, s, r), inst))) ++hits;
    cert.per_ordering_counts[idx] = hits;
  }

  for (auto c : cert.per_ordering_counts) {
    cert.total_incidence += c;
    cert.max_per_ordering = std::max<std::uint64_t>(cert.max_per_ordering, c);
  }
  cert.bound_lhs = mul_or_throw(r, cert.orderings);
  cert.per_ordering_within_r = cert.max_per_ordering <= r;
  cert.expected_total = mul_or_throw(expected_meeting_count(inst), cert.family_size);
  if (cert.exact) cert.total_matches = cert.total_incidence == cert.expected_total;
  return cert;
}

}  // namespace ekr
