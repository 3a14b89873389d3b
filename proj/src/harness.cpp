#include "ekr/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "ekr/arith.hpp"
#include "ekr/error.hpp"

#ifndef EKR_VERSION
#define EKR_VERSION "0.0.0"
#endif

namespace ekr {

const std::array<std::array<Label, 5>, 7> kTauTable5x7 = {{
    {31, 27, 23, 19, 15},
    {26, 22, 18, 14, 10},
    {21, 17, 13, 9, 5},
    {16, 12, 8, 4, 35},
    {11, 7, 3, 34, 30},
    {6, 2, 33, 29, 25},
    {1, 32, 28, 24, 20},
}};

std::string tool_version() { return EKR_VERSION; }

namespace {

constexpr std::array<std::pair<SuiteId, std::string_view>, 10> kSuiteNames = {{
    {SuiteId::kTauTable, "TAU_TABLE"},
    {SuiteId::kRGood, "R_GOOD"},
    {SuiteId::kTDistinct, "T_DISTINCT"},
    {SuiteId::kCycleLemma, "CYCLE_LEMMA"},
    {SuiteId::kLemma3Count, "LEMMA3_COUNT"},
    {SuiteId::kTheoremBound, "THEOREM_BOUND"},
    {SuiteId::kTheoremUnique, "THEOREM_UNIQUE"},
    {SuiteId::kDuality, "DUALITY"},
    {SuiteId::kNoGoodOrdering, "NO_GOOD_ORDERING"},
    {SuiteId::kDoubleCount, "DOUBLE_COUNT"},
}};

}  // namespace

std::string_view to_string(SuiteId id) {
  for (auto [s, name] : kSuiteNames)
    if (s == id) return name;
  return "UNKNOWN";
}

std::optional<SuiteId> suite_from_string(std::string_view name) {
  for (auto [s, n] : kSuiteNames)
    if (n == name) return s;
  return std::nullopt;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kSkipped: return "SKIPPED";
  }
  return "UNKNOWN";
}

std::string GridPoint::label() const {
  return "(" + std::to_string(k) + "," + std::to_string(r) + "," + std::to_string(n) + ")";
}

std::string CyclePoint::label() const {
  return "m=" + std::to_string(m) + ",r=" + std::to_string(r);
}

void SuiteSpec::validate() const {
  for (const auto& p : grid)
    if (p.k == 0 || p.n == 0 || p.r == 0 || p.r > std::min(p.k, p.n))
      throw InvalidArgument(std::string(to_string(id)) + " grid entry " + p.label() +
                            " needs 1 <= r <= min(k, n)");
  for (const auto& c : cycles)
    if (c.r == 0 || c.m < 2 * c.r)
      throw InvalidArgument("cycle entry " + c.label() + " needs m >= 2r >= 2");
  if (mode.sampled && mode.samples == 0)
    throw InvalidArgument("sampled mode needs a positive sample count");
}

std::size_t ConformanceReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(verdicts.begin(), verdicts.end(), [&](const Verdict& v) { return v.status == s; }));
}

namespace {

struct Outcome {
  Status status = Status::kPass;
  std::string reason;
  Json witness = nullptr;
};

Outcome pass(std::string reason = {}) { return {Status::kPass, std::move(reason), nullptr}; }
Outcome fail(std::string reason, Json witness) {
  if (witness.is_null()) witness = Json::object();
  return {Status::kFail, std::move(reason), std::move(witness)};
}
Outcome skip(std::string reason) { return {Status::kSkipped, std::move(reason), nullptr}; }

Json pp_json(const PermutationPair& pp) { return {{"phi", pp.phi()}, {"psi", pp.psi()}}; }

std::uint64_t point_seed(const SuiteSpec& spec, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c) {
  return derive_seed(spec.mode.seed, {static_cast<std::uint64_t>(spec.id), a, b, c});
}

Outcome run_tau_table(const GridPoint& p) {
  if (p.k > p.n) return skip("use-transpose: tau needs k <= n");
  const auto o = tau_ordering(p.k, p.n);
  if (p.k == 5 && p.n == 7) {
    for (std::uint32_t row = 0; row < 7; ++row)
      for (std::uint32_t x = 1; x <= 5; ++x) {
        const std::uint32_t y = 7 - row;
        const auto got = tau(5, 7, {x, y});
        const auto want = kTauTable5x7[row][x - 1];
        if (got != want)
          return fail("label mismatch against the reference table",
                      {{"pair", {x, y}}, {"expected", want}, {"actual", got}});
      }
    return pass("all 35 labels match the reference table");
  }
  // Other sizes: tau must still be a bijection that is (k-1)-good.
  if (p.k >= 2)
    if (auto bad = first_bad_window(o, p.k - 1))
      return fail("tau is not (k-1)-good", {{"windowStart", *bad}});
  return pass("bijective" + std::string(p.k >= 2 ? " and (k-1)-good" : ""));
}

Outcome check_good_all_r(const PermutationPair& pp) {
  const auto o = materialize(pp);
  for (std::uint32_t r = 1; r + 1 <= pp.k(); ++r)
    if (auto bad = first_bad_window(o, r))
      return fail("ordering is not " + std::to_string(r) + "-good",
                  {{"ordering", pp_json(pp)}, {"r", r}, {"windowStart", *bad}});
  return pass();
}

Outcome run_r_good(const SuiteSpec& spec, const GridPoint& p) {
  if (p.k > p.n) return skip("use-transpose: tau needs k <= n");
  std::optional<PermutationPairSpace> space;
  if (!spec.mode.sampled) {
    try {
      space.emplace(p.k, p.n, spec.caps.enumeration_cap);
    } catch (const InstanceTooLarge& e) {
      return skip(std::string("instance-too-large: ") + e.what());
    }
    for (std::uint64_t i = 0; i < space->size(); ++i)
      if (auto o = check_good_all_r(space->at(i)); o.status != Status::kPass) return o;
    return pass("all " + std::to_string(space->size()) + " orderings are r-good for r in [k-1]");
  }
  const auto seed = point_seed(spec, p.k, p.n, 0);
  for (std::uint64_t s = 0; s < spec.mode.samples; ++s) {
    CounterRng rng(derive_seed(seed, {s}));
    auto phi = random_permutation(p.k, rng);
    auto psi = random_permutation(p.n, rng);
    if (auto o = check_good_all_r(PermutationPair(std::move(phi), std::move(psi)));
        o.status != Status::kPass)
      return o;
  }
  return pass(std::to_string(spec.mode.samples) + " sampled orderings are r-good for r in [k-1]");
}

Outcome run_t_distinct(const SuiteSpec& spec, const GridPoint& p) {
  if (p.k > p.n) return skip("use-transpose: tau needs k <= n");
  std::optional<PermutationPairSpace> space;
  try {
    space.emplace(p.k, p.n, spec.caps.enumeration_cap);
  } catch (const InstanceTooLarge& e) {
    return skip(std::string("instance-too-large: ") + e.what());
  }
  std::map<std::vector<OrderedPair>, std::uint64_t> seen;
  for (std::uint64_t i = 0; i < space->size(); ++i) {
    const auto o = materialize(space->at(i));
    std::vector<OrderedPair> key(o.pairs().begin(), o.pairs().end());
    auto [it, fresh] = seen.emplace(std::move(key), i);
    if (!fresh)
      return fail("two permutation pairs give the same ordering",
                  {{"first", pp_json(space->at(it->second))}, {"second", pp_json(space->at(i))}});
  }
  return pass(std::to_string(space->size()) + " pairwise-distinct orderings");
}

Outcome run_cycle_lemma(const SuiteSpec& spec, const CyclePoint& c) {
  const auto samples = spec.mode.sampled ? spec.mode.samples : 1;
  const auto seed = point_seed(spec, c.m, c.r, 0);
  bool non_star_seen = false;
  for (std::uint64_t s = 0; s < samples; ++s) {
    KatonaReport rep;
    try {
      rep = spec.mode.sampled ? katona_verify_random(c.m, c.r, derive_seed(seed, {s})) : [&] {
        std::vector<std::uint32_t> cycle(c.m);
        for (std::uint32_t i = 0; i < c.m; ++i) cycle[i] = i;
        return katona_verify(cycle, c.r);
      }();
    } catch (const InstanceTooLarge& e) {
      return skip(std::string("instance-too-large: ") + e.what());
    }
    if (!rep.lemma_holds)
      return fail("cycle lemma violated", {{"sample", s}, {"report", katona_to_json(rep)}});
    non_star_seen = non_star_seen || !rep.all_optima_are_stars;
  }
  std::string reason = "maximum is r on " + std::to_string(samples) + " orderings";
  if (c.m > 2 * c.r)
    reason += ", all optima are stars";
  else
    reason += non_star_seen ? ", non-star optimum exists at m = 2r" : ", all optima are stars";
  return pass(reason);
}

std::optional<Instance> make_instance(const GridPoint& p, Outcome& out) {
  try {
    return Instance(p.k, p.r, p.n);
  } catch (const InstanceTooLarge& e) {
    out = skip(std::string("instance-too-large: ") + e.what());
  } catch (const Error& e) {
    out = fail(e.what(), {{"instance", p.label()}});
  }
  return std::nullopt;
}

Outcome cycle_precondition(const Instance& inst) {
  if (inst.k() > inst.n()) return skip("use-transpose: cycle method needs k <= n");
  if (inst.r() == inst.k()) return skip("certificate unavailable: cycle method needs r <= k-1");
  return pass();
}

Outcome run_lemma3(const SuiteSpec& spec, const Instance& inst, int threads) {
  if (auto pre = cycle_precondition(inst); pre.status != Status::kPass) return pre;
  std::vector<std::uint64_t> counts;
  try {
    counts = meeting_counts_all(inst, spec.caps.enumeration_cap, threads);
  } catch (const InstanceTooLarge& e) {
    return skip(std::string("instance-too-large: ") + e.what());
  }
  const auto expected = expected_meeting_count(inst);
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] != expected)
      return fail("member meets the wrong number of orderings",
                  {{"member", member_to_json(unrank(i, inst))},
                   {"expected", expected},
                   {"actual", counts[i]}});
  return pass("every member meets " + std::to_string(expected) + " orderings");
}

std::optional<SolveReport> solve(const Instance& inst, const Caps& caps, int threads,
                                 Outcome& out) {
  try {
    auto g = build_graph(inst, caps.vertex_cap, threads);
    auto rep = max_clique(g, SolveOptions{std::nullopt, caps.timeout});
    if (!rep.exact) {
      out = skip("timeout: search incomplete");
      return std::nullopt;
    }
    return rep;
  } catch (const InstanceTooLarge& e) {
    out = skip(std::string("instance-too-large: ") + e.what());
  }
  return std::nullopt;
}

Outcome run_theorem_bound(const SuiteSpec& spec, const Instance& inst, int threads) {
  Outcome out;
  auto rep = solve(inst, spec.caps, threads, out);
  if (!rep) return out;
  if (!is_intersecting_family(rep->witness) || rep->witness.size() != rep->max_size)
    return fail("solver witness is not an intersecting family of the reported size",
                {{"witness", family_to_json(rep->witness)}});
  if (rep->max_size != rep->star_bound)
    return fail("maximum intersecting family size differs from the star bound",
                {{"maxSize", rep->max_size},
                 {"starBound", rep->star_bound},
                 {"witness", family_to_json(rep->witness)}});
  return pass("maximum " + std::to_string(rep->max_size) + " equals the star bound");
}

Outcome run_theorem_unique(const SuiteSpec& spec, const Instance& inst, int threads) {
  if (family_size(inst) > spec.caps.unique_family_cap)
    return skip("instance-too-large: family exceeds the optima enumeration cap");
  SolveReport rep(inst);
  try {
    rep = verify_theorem(inst, VerifyOptions{spec.caps.vertex_cap, spec.caps.optima_cap,
                                             spec.caps.timeout, threads});
  } catch (const InstanceTooLarge& e) {
    return skip(std::string("instance-too-large: ") + e.what());
  }
  const auto verdict = rep.verdict();
  if (verdict == "INCOMPLETE") return skip("timeout or optima cap reached");
  if (verdict != "PASS")
    return fail("an optimum is not a star or the optimum count is wrong",
                {{"report", solve_report_to_json(rep, false)}});
  const auto kn = std::uint64_t{inst.k()} * inst.n();
  std::string reason = std::to_string(*rep.optima_count) + " optima, all stars";
  if (*rep.optima_count != kn) reason += " (" + std::to_string(kn) + " centres share stars)";
  return pass(reason);
}

Outcome run_duality(const SuiteSpec& spec, const Instance& inst, int threads) {
  const auto size = family_size(inst);
  if (size > spec.caps.vertex_cap) return skip("instance-too-large: pair scan above vertex cap");
  std::vector<GenPerm> members;
  for (const auto& g : enumerate(inst)) members.push_back(g);
  for (std::size_t i = 0; i < size; ++i) {
    const auto ti = transpose(members[i]);
    if (transpose(ti) != members[i])
      return fail("transpose is not an involution", {{"member", member_to_json(members[i])}});
    for (std::size_t j = i + 1; j < size; ++j)
      if (intersects(members[i], members[j]) != intersects(ti, transpose(members[j])))
        return fail("transpose changes the intersection relation",
                    {{"a", member_to_json(members[i])}, {"b", member_to_json(members[j])}});
  }
  Outcome out;
  auto here = solve(inst, spec.caps, threads, out);
  if (!here) return out;
  auto there = solve(inst.transposed(), spec.caps, threads, out);
  if (!there) return out;
  if (here->max_size != there->max_size)
    return fail("maxima differ between an instance and its transpose",
                {{"maxSize", here->max_size}, {"transposedMaxSize", there->max_size}});
  return pass("intersections preserved; both maxima " + std::to_string(here->max_size));
}

Outcome run_no_good(const GridPoint& p) {
  try {
    if (no_good_ordering_exists(p.n)) return pass("no n-good ordering of [n]x[n]");
    return fail("an n-good ordering of [n]x[n] exists", {{"n", p.n}});
  } catch (const InstanceTooLarge& e) {
    return skip(std::string("instance-too-large: ") + e.what());
  }
}

Outcome run_double_count(const SuiteSpec& spec, const Instance& inst, int threads) {
  const Instance target = inst.k() > inst.n() ? inst.transposed() : inst;
  if (auto pre = cycle_precondition(target); pre.status != Status::kPass) return pre;
  DoubleCountOptions opts;
  opts.enumeration_cap = spec.mode.sampled ? 0 : spec.caps.enumeration_cap;
  opts.samples = spec.mode.sampled ? spec.mode.samples : 0;
  opts.seed = point_seed(spec, inst.k(), inst.r(), inst.n());
  opts.threads = threads;
  const auto cert = double_count_check(star(target, {1, 1}), opts);
  if (!spec.mode.sampled && !cert.exact)
    return skip("instance-too-large: k!n! above the enumeration cap");
  const auto r = target.r();
  const bool all_r = std::all_of(cert.per_ordering_counts.begin(), cert.per_ordering_counts.end(),
                                 [&](std::uint32_t c) { return c == r; });
  if (!cert.holds() || !all_r || cert.implied_bound != star_bound(target))
    return fail("double-counting certificate does not close", certificate_to_json(cert));
  return pass("every ordering meets r star members; total " +
              std::to_string(cert.total_incidence) + "; implied bound " +
              std::to_string(*cert.implied_bound));
}

Outcome run_point(const SuiteSpec& spec, const GridPoint& p, int threads) {
  switch (spec.id) {
    case SuiteId::kTauTable: return run_tau_table(p);
    case SuiteId::kRGood: return run_r_good(spec, p);
    case SuiteId::kTDistinct: return run_t_distinct(spec, p);
    case SuiteId::kNoGoodOrdering: return run_no_good(p);
    default: break;
  }
  Outcome out;
  auto inst = make_instance(p, out);
  if (!inst) return out;
  switch (spec.id) {
    case SuiteId::kLemma3Count: return run_lemma3(spec, *inst, threads);
    case SuiteId::kTheoremBound: return run_theorem_bound(spec, *inst, threads);
    case SuiteId::kTheoremUnique: return run_theorem_unique(spec, *inst, threads);
    case SuiteId::kDuality: return run_duality(spec, *inst, threads);
    case SuiteId::kDoubleCount: return run_double_count(spec, *inst, threads);
    default: break;
  }
  return fail("suite does not take grid points", nullptr);
}

Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const InstanceTooLarge& e) {
    return skip(std::string("instance-too-large: ") + e.what());
  } catch (const std::exception& e) {
    return fail(std::string("unexpected error: ") + e.what(), nullptr);
  }
}

}  // namespace

std::vector<Verdict> run_suite(const SuiteSpec& spec, int threads) {
  spec.validate();
  const bool cyc = spec.id == SuiteId::kCycleLemma;
  const auto count = static_cast<std::int64_t>(cyc ? spec.cycles.size() : spec.grid.size());
  std::vector<Verdict> out(static_cast<std::size_t>(count));
  // Parallel over instances; kernels inside run single-threaded so that the
  // pool is not oversubscribed.
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1) if (threads > 1)
  for (std::int64_t i = 0; i < count; ++i) {
    Outcome o;
    std::string label;
    if (cyc) {
      const auto& c = spec.cycles[i];
      label = c.label();
      o = guarded([&] { return run_cycle_lemma(spec, c); });
    } else {
      const auto& p = spec.grid[i];
      label = p.label();
      o = guarded([&] { return run_point(spec, p, 1); });
    }
    out[i] = Verdict{spec.id, std::move(label), o.status, std::move(o.reason), std::move(o.witness)};
  }
  return out;
}

std::vector<SuiteSpec> default_grid(std::uint64_t seed) {
  const std::vector<GridPoint> theorem_grid = {
      {2, 1, 2}, {2, 1, 3}, {2, 2, 3}, {3, 1, 3}, {3, 2, 3}, {3, 3, 3},
      {3, 2, 4}, {4, 2, 4}, {4, 3, 4}, {4, 2, 5}, {3, 3, 4},
  };
  std::vector<GridPoint> sampled_good;
  for (std::uint32_t k = 4; k <= 8; ++k)
    for (std::uint32_t n = k; n <= 8; ++n) sampled_good.push_back({k, 1, n});
  std::vector<CyclePoint> cycles;
  for (std::uint32_t r = 1; r <= 4; ++r)
    for (std::uint32_t m = 2 * r; m <= 12; ++m) cycles.push_back({m, r});

  const auto exact = SuiteMode::exact();
  const auto sampled = [&](std::uint64_t count) { return SuiteMode::sampling(count, seed); };
  return {
      {SuiteId::kTauTable, {{5, 1, 7}, {2, 1, 3}, {3, 1, 3}, {4, 1, 6}}, {}, exact, {}},
      {SuiteId::kRGood, {{2, 1, 2}, {2, 1, 3}, {3, 1, 3}}, {}, exact, {}},
      {SuiteId::kRGood, sampled_good, {}, sampled(1000), {}},
      {SuiteId::kTDistinct, {{2, 1, 2}, {2, 1, 3}, {3, 1, 3}}, {}, exact, {}},
      {SuiteId::kCycleLemma, {}, cycles, sampled(100), {}},
      {SuiteId::kLemma3Count,
       {{2, 1, 2}, {2, 1, 3}, {3, 1, 3}, {3, 2, 3}, {3, 2, 4}, {4, 3, 4}, {4, 2, 4}, {4, 2, 5}},
       {},
       exact,
       {}},
      {SuiteId::kTheoremBound, theorem_grid, {}, exact, {}},
      {SuiteId::kTheoremUnique, theorem_grid, {}, exact, {}},
      {SuiteId::kDuality, {{2, 2, 3}, {3, 2, 4}, {3, 2, 3}}, {}, exact, {}},
      {SuiteId::kNoGoodOrdering, {{2, 2, 2}, {3, 3, 3}}, {}, exact, {}},
      {SuiteId::kDoubleCount,
       {{2, 1, 2}, {3, 1, 3}, {3, 2, 3}, {3, 2, 4}, {4, 2, 4}, {4, 3, 4}, {4, 2, 5}},
       {},
       exact,
       {}},
  };
}

ConformanceReport run_suites(const std::vector<SuiteSpec>& specs, const RunOptions& opts) {
  const auto began = std::chrono::steady_clock::now();
  ConformanceReport rep;
  rep.tool_version = tool_version();
  rep.seed = opts.seed;
  rep.threads = opts.threads;
  for (const auto& spec : specs) {
    auto v = run_suite(spec, opts.threads);
    rep.verdicts.insert(rep.verdicts.end(), std::make_move_iterator(v.begin()),
                        std::make_move_iterator(v.end()));
  }
  if (opts.record_timing)
    rep.wall_clock_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - began)
                            .count();
  return rep;
}

Json report_to_json(const ConformanceReport& rep) {
  Json doc;
  doc["tool"] = "ekr";
  doc["version"] = rep.tool_version;
  doc["seed"] = rep.seed;
  doc["threads"] = rep.threads;
  Json verdicts = Json::array();
  for (const auto& v : rep.verdicts)
    verdicts.push_back({{"suiteId", to_string(v.suite)},
                        {"instance", v.instance},
                        {"status", to_string(v.status)},
                        {"reason", v.reason},
                        {"witness", v.witness}});
  doc["verdicts"] = std::move(verdicts);
  doc["totals"] = {{"pass", rep.count(Status::kPass)},
                   {"fail", rep.count(Status::kFail)},
                   {"skipped", rep.count(Status::kSkipped)}};
  if (rep.wall_clock_ms) doc["wallClockMs"] = *rep.wall_clock_ms;
  return doc;
}

ConformanceReport report_from_json(const Json& doc) {
  ConformanceReport rep;
  try {
    rep.tool_version = doc.at("version").get<std::string>();
    rep.seed = doc.at("seed").get<std::uint64_t>();
    rep.threads = doc.at("threads").get<int>();
    for (const auto& v : doc.at("verdicts")) {
      const auto suite = suite_from_string(v.at("suiteId").get<std::string>());
      if (!suite) throw InvalidArgument("unknown suite id " + v.at("suiteId").dump());
      const auto status_name = v.at("status").get<std::string>();
      Status status;
      if (status_name == "PASS")
        status = Status::kPass;
      else if (status_name == "FAIL")
        status = Status::kFail;
      else if (status_name == "SKIPPED")
        status = Status::kSkipped;
      else
        throw InvalidArgument("unknown status " + status_name);
      rep.verdicts.push_back({*suite, v.at("instance").get<std::string>(), status,
                              v.at("reason").get<std::string>(), v.at("witness")});
    }
    if (doc.contains("wallClockMs")) rep.wall_clock_ms = doc["wallClockMs"].get<double>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
  return rep;
}

std::string report_to_csv(const ConformanceReport& rep) {
  std::ostringstream os;
  os << "suiteId,instance,status,reason\n";
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  for (const auto& v : rep.verdicts)
    os << to_string(v.suite) << ',' << quote(v.instance) << ',' << to_string(v.status) << ','
       << quote(v.reason) << '\n';
  return os.str();
}

}  // namespace ekr
