// Command-line front end. Exit codes: 0 success or PASS, 1 a checked claim
// failed, 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ekr/error.hpp"
#include "ekr/harness.hpp"
#include "ekr/json_io.hpp"
#include "ekr/rng.hpp"
#include "ekr/solver.hpp"

using namespace ekr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string format = "text";
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t timeout_ms = 0;
  int threads = 1;
  std::string out;
  std::uint64_t vertex_cap = kDefaultVertexCap;
  std::uint64_t enum_cap = kDefaultEnumerationCap;
  std::uint64_t optima_cap = kDefaultOptimaCap;

  std::chrono::milliseconds timeout() const { return std::chrono::milliseconds(timeout_ms); }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Seed for every sampled step")->capture_default_str();
  cmd->add_option("--timeout", c.timeout_ms, "Search timeout in ms, 0 for none (env EKR_TIMEOUT)")
      ->envname("EKR_TIMEOUT")
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads; 1 is the deterministic mode")
      ->envname("EKR_THREADS")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Write output here instead of stdout");
  cmd->add_option("--vertex-cap", c.vertex_cap, "Largest graph built (env EKR_VERTEX_CAP)")
      ->envname("EKR_VERTEX_CAP")
      ->capture_default_str();
  cmd->add_option("--enum-cap", c.enum_cap, "Largest k!n! enumerated (env EKR_ENUM_CAP)")
      ->envname("EKR_ENUM_CAP")
      ->capture_default_str();
  cmd->add_option("--optima-cap", c.optima_cap, "Most optima listed (env EKR_OPTIMA_CAP)")
      ->envname("EKR_OPTIMA_CAP")
      ->capture_default_str();
}

struct KRN {
  std::uint32_t k = 0, r = 0, n = 0;
  Instance instance() const { return Instance(k, r, n); }
};

void add_krn(CLI::App* cmd, KRN& v, bool need_r = true) {
  cmd->add_option("--k", v.k, "Size of the x range")->required();
  if (need_r) cmd->add_option("--r", v.r, "Pairs per member")->required();
  cmd->add_option("--n", v.n, "Size of the y range")->required();
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + c.out);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// One flat object as "key: value" lines, or a header row plus one row.
std::string render_object(const Json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::ostringstream os;
  if (format == "text") {
    for (const auto& [key, value] : doc.items()) os << key << ": " << scalar_text(value) << '\n';
    return os.str();
  }
  std::string header, row;
  for (const auto& [key, value] : doc.items()) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += csv_field(key);
    row += csv_field(scalar_text(value));
  }
  return header + "\n" + row + "\n";
}

std::vector<std::uint32_t> parse_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw InvalidArgument("expected a comma-separated list of integers, got \"" + text + "\"");
    }
  }
  return out;
}

OrderedPair parse_pair(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() != 2) throw InvalidArgument("expected x,y, got \"" + text + "\"");
  return {v[0], v[1]};
}

/// "x,y;x,y;..."
GenPerm parse_member(const std::string& text) {
  std::vector<OrderedPair> pairs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) pairs.push_back(parse_pair(item));
  return GenPerm(std::move(pairs));
}

Json pp_json(const PermutationPair& pp) { return {{"phi", pp.phi()}, {"psi", pp.psi()}}; }

// ---------------------------------------------------------------- enumerate

int run_enumerate(const Common& c, const KRN& krn) {
  const auto inst = krn.instance();
  if (family_size(inst) > c.enum_cap)
    throw InstanceTooLarge("P" + inst.to_string() + " has more members than --enum-cap");
  std::ostringstream os;
  if (c.format == "json") {
    os << family_to_json(Family::full(inst)).dump(2) << '\n';
  } else {
    if (c.format == "csv") os << "rank,member\n";
    for (auto it = enumerate(inst).begin(); it != enumerate(inst).end(); ++it) {
      if (c.format == "csv")
        os << it.rank() << ',' << csv_field((*it).to_string()) << '\n';
      else
        os << it.rank() << '\t' << (*it).to_string() << '\n';
    }
  }
  emit(c, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------- tau-table

struct TauArgs {
  std::string phi, psi;
};

int run_tau_table(const Common& c, const KRN& krn, const TauArgs& a) {
  auto pp = PermutationPair::identity(krn.k, krn.n);
  if (!a.phi.empty() || !a.psi.empty()) {
    auto phi = a.phi.empty() ? pp.phi() : parse_list(a.phi);
    auto psi = a.psi.empty() ? pp.psi() : parse_list(a.psi);
    pp = PermutationPair(std::move(phi), std::move(psi));
  }
  const auto o = materialize(pp);
  std::ostringstream os;
  if (c.format == "json") {
    os << ordering_to_json(o).dump() << '\n';
  } else if (c.format == "csv") {
    os << "y\\x";
    for (std::uint32_t x = 1; x <= o.k(); ++x) os << ',' << x;
    os << '\n';
    for (std::uint32_t y = o.n(); y >= 1; --y) {
      os << y;
      for (std::uint32_t x = 1; x <= o.k(); ++x) os << ',' << o.label_of({x, y});
      os << '\n';
    }
  } else {
    // Rows run from y = n down to 1, as (x,y)^label.
    std::size_t width = 0;
    std::vector<std::vector<std::string>> cells;
    for (std::uint32_t y = o.n(); y >= 1; --y) {
      auto& row = cells.emplace_back();
      for (std::uint32_t x = 1; x <= o.k(); ++x) {
        row.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")^" +
                      std::to_string(o.label_of({x, y})));
        width = std::max(width, row.back().size());
      }
    }
    for (const auto& row : cells) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << row[i];
        if (i + 1 < row.size()) os << std::string(width + 2 - row[i].size(), ' ');
      }
      os << '\n';
    }
  }
  emit(c, os.str());
  return kExitOk;
}

// --------------------------------------------------------------- check-good

struct GoodArgs {
  std::string ordering_file;
  std::vector<std::uint32_t> rs;
  bool all = false;
  std::uint64_t samples = 0;
};

int run_check_good(const Common& c, const KRN& krn, const GoodArgs& a) {
  Json doc;
  bool all_good = true;
  auto r_values = [&](std::uint32_t k, std::uint32_t n) {
    if (!a.rs.empty()) return a.rs;
    std::vector<std::uint32_t> rs;
    for (std::uint32_t r = 1; r + 1 <= std::min(k, n) || r == 1; ++r) rs.push_back(r);
    return rs;
  };
  auto first_bad = [](const CyclicOrdering& o, const std::vector<std::uint32_t>& rs)
      -> std::optional<std::pair<std::uint32_t, Label>> {
    for (auto r : rs)
      if (auto bad = first_bad_window(o, r)) return std::pair{r, *bad};
    return std::nullopt;
  };

  if (!a.ordering_file.empty() || (!a.all && a.samples == 0)) {
    const auto o = a.ordering_file.empty() ? tau_ordering(krn.k, krn.n)
                                           : ordering_from_json(read_json(a.ordering_file));
    const auto rs = r_values(o.k(), o.n());
    doc["mode"] = a.ordering_file.empty() ? "tau" : "file";
    doc["k"] = o.k();
    doc["n"] = o.n();
    Json results = Json::array();
    for (auto r : rs) {
      const auto bad = first_bad_window(o, r);
      all_good = all_good && !bad;
      results.push_back({{"r", r}, {"good", !bad}, {"badWindowStart", bad ? Json(*bad) : Json()}});
    }
    doc["results"] = std::move(results);
    doc["allGood"] = all_good;
  } else {
    if (krn.k > krn.n) throw UseTranspose("tau_{phi,psi} needs k <= n; swap --k and --n");
    const auto rs = r_values(krn.k, krn.n);
    doc["mode"] = a.all ? "all" : "sampled";
    doc["k"] = krn.k;
    doc["n"] = krn.n;
    doc["rValues"] = rs;
    std::uint64_t checked = 0;
    Json witness;
    auto visit = [&](const PermutationPair& pp) {
      ++checked;
      if (auto bad = first_bad(materialize(pp), rs); bad && witness.is_null())
        witness = {{"ordering", pp_json(pp)}, {"r", bad->first}, {"windowStart", bad->second}};
    };
    if (a.all) {
      auto stream = enumerate_t(krn.k, krn.n, c.enum_cap);
      while (auto pp = stream.next()) visit(*pp);
    } else {
      doc["seed"] = c.seed;
      for (std::uint64_t s = 0; s < a.samples; ++s) {
        CounterRng rng(derive_seed(c.seed, {s}));
        auto phi = random_permutation(krn.k, rng);
        visit(PermutationPair(std::move(phi), random_permutation(krn.n, rng)));
      }
    }
    all_good = witness.is_null();
    doc["orderingsChecked"] = checked;
    doc["allGood"] = all_good;
    doc["firstBad"] = witness;
  }
  emit(c, render_object(doc, c.format));
  return all_good ? kExitOk : kExitViolation;
}

// -------------------------------------------------------------- lemma-count

struct LemmaArgs {
  std::string member;
  std::uint64_t samples = 0;
};

int run_lemma_count(const Common& c, const KRN& krn, const LemmaArgs& a) {
  const auto inst = krn.instance();
  require_cycle_instance(inst);
  const auto expected = expected_meeting_count(inst);

  if (!a.member.empty()) {
    const auto g = parse_member(a.member);
    if (!g.fits(inst)) throw InvalidArgument(g.to_string() + " is not a member of P" + inst.to_string());
    Json doc = {{"instance", instance_to_json(inst)},
                {"member", member_to_json(g)},
                {"expected", expected}};
    bool ok = true;
    if (a.samples > 0) {
      const auto s = sample_meeting_orderings(g, inst, a.samples, c.seed);
      doc["mode"] = "sampled";
      doc["seed"] = c.seed;
      doc["samples"] = s.samples;
      doc["hits"] = s.hits;
      doc["estimate"] = s.estimate;
    } else {
      const auto count = count_meeting_orderings(g, inst, c.enum_cap, c.threads);
      ok = count == expected;
      doc["mode"] = "exact";
      doc["count"] = count;
      doc["matches"] = ok;
    }
    emit(c, render_object(doc, c.format));
    return ok ? kExitOk : kExitViolation;
  }

  if (a.samples > 0) throw InvalidArgument("--samples needs --member");
  const auto counts = meeting_counts_all(inst, c.enum_cap, c.threads);
  std::uint64_t mismatches = 0;
  for (auto v : counts) mismatches += v != expected;
  std::ostringstream os;
  if (c.format == "json") {
    Json doc = {{"instance", instance_to_json(inst)},
                {"expected", expected},
                {"members", counts.size()},
                {"counts", counts},
                {"mismatches", mismatches},
                {"allMatch", mismatches == 0}};
    os << doc.dump(2) << '\n';
  } else if (c.format == "csv") {
    os << "rank,member,count,expected\n";
    for (Rank i = 0; i < counts.size(); ++i)
      os << i << ',' << csv_field(unrank(i, inst).to_string()) << ',' << counts[i] << ','
         << expected << '\n';
  } else {
    for (Rank i = 0; i < counts.size(); ++i)
      os << i << '\t' << unrank(i, inst).to_string() << '\t' << counts[i] << '\n';
    os << "expected " << expected << " for each of " << counts.size() << " members; "
       << mismatches << " mismatches\n";
  }
  emit(c, os.str());
  return mismatches == 0 ? kExitOk : kExitViolation;
}

// ------------------------------------------------------------------ katona

struct KatonaArgs {
  std::uint32_t m = 0, r = 0;
  std::string cycle;
  std::uint64_t samples = 0;
};

int run_katona(const Common& c, const KatonaArgs& a) {
  if (!a.cycle.empty()) {
    const auto cycle = parse_list(a.cycle);
    auto rep = katona_to_json(katona_verify(cycle, a.r));
    rep["cycle"] = cycle;
    emit(c, render_object(rep, c.format));
    return rep["lemmaHolds"].get<bool>() ? kExitOk : kExitViolation;
  }
  if (a.m == 0) throw InvalidArgument("give --m or --cycle");
  if (a.samples == 0) {
    std::vector<std::uint32_t> cycle(a.m);
    for (std::uint32_t i = 0; i < a.m; ++i) cycle[i] = i;
    const auto rep = katona_to_json(katona_verify(cycle, a.r));
    emit(c, render_object(rep, c.format));
    return rep["lemmaHolds"].get<bool>() ? kExitOk : kExitViolation;
  }
  Json doc = {{"m", a.m}, {"r", a.r}, {"seed", c.seed}, {"samples", a.samples}};
  bool holds = true, non_star = false;
  Json failure;
  for (std::uint64_t s = 0; s < a.samples; ++s) {
    const auto rep = katona_verify_random(a.m, a.r, derive_seed(c.seed, {s}));
    non_star = non_star || !rep.all_optima_are_stars;
    if (!rep.lemma_holds && holds) {
      holds = false;
      failure = {{"sample", s}, {"report", katona_to_json(rep)}};
    }
  }
  doc["lemmaHolds"] = holds;
  doc["nonStarOptimumSeen"] = non_star;
  doc["firstFailure"] = failure;
  emit(c, render_object(doc, c.format));
  return holds ? kExitOk : kExitViolation;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
  bool enumerate_optima = false;
  std::string dimacs;
  std::uint64_t seed_bound = 0;
  bool timings = false;
};

/// Maps a report on the transposed instance back to the requested one.
SolveReport untranspose(const SolveReport& dual, const Instance& inst) {
  SolveReport rep(inst);
  rep.max_size = dual.max_size;
  rep.witness = transpose(dual.witness);
  rep.exact = dual.exact;
  rep.star_bound = dual.star_bound;
  rep.optima_count = dual.optima_count;
  rep.optima_capped = dual.optima_capped;
  rep.all_optima_are_stars = dual.all_optima_are_stars;
  for (auto p : dual.optima_centres) rep.optima_centres.push_back({p.y, p.x});
  if (dual.violation) rep.violation = transpose(*dual.violation);
  rep.nodes_explored = dual.nodes_explored;
  rep.elapsed = dual.elapsed;
  rep.transposed = true;
  return rep;
}

int run_solve(const Common& c, const KRN& krn, const SolveArgs& a) {
  const auto inst = krn.instance();
  const bool flip = inst.k() > inst.n();
  const auto work = flip ? inst.transposed() : inst;
  const auto graph = build_graph(work, c.vertex_cap, c.threads);
  if (!a.dimacs.empty()) {
    std::ofstream f(a.dimacs);
    if (!f) throw InvalidArgument("cannot write " + a.dimacs);
    write_dimacs(f, graph);
  }
  SolveReport rep(work);
  if (a.enumerate_optima) {
    VerifyOptions opts;
    opts.vertex_cap = c.vertex_cap;
    opts.optima_cap = c.optima_cap;
    opts.timeout = c.timeout();
    opts.threads = c.threads;
    rep = verify_theorem(work, opts);
  } else {
    SolveOptions opts;
    if (a.seed_bound > 0) opts.seed_lower_bound = a.seed_bound;
    opts.timeout = c.timeout();
    rep = max_clique(graph, opts);
  }
  if (flip) rep = untranspose(rep, inst);
  const auto doc = solve_report_to_json(rep, a.timings);
  if (c.format == "text") {
    std::ostringstream os;
    os << "instance " << inst.to_string() << (flip ? " (solved as its transpose)" : "") << '\n'
       << "maximum intersecting family: " << rep.max_size << (rep.exact ? "" : " (lower bound, timed out)")
       << '\n'
       << "star bound: " << rep.star_bound << '\n';
    if (rep.optima_count) {
      os << "optima: " << *rep.optima_count << (rep.optima_capped ? " (capped)" : "") << '\n'
         << "all optima are stars: " << (rep.all_optima_are_stars.value_or(false) ? "yes" : "no") << '\n';
    }
    os << "witness: ";
    for (const auto& m : rep.witness.members()) os << m.to_string() << ' ';
    os << '\n' << "nodes explored: " << rep.nodes_explored << '\n';
    if (a.timings)
      os << "elapsed ms: " << std::chrono::duration<double, std::milli>(rep.elapsed).count() << '\n';
    os << "verdict: " << rep.verdict() << '\n';
    emit(c, os.str());
  } else {
    emit(c, render_object(doc, c.format));
  }
  return rep.verdict() == "VIOLATION" ? kExitViolation : kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::vector<std::string> suites;
  std::string csv_summary;
  bool timings = false;
};

int run_verify(const Common& c, const VerifyArgs& a) {
  std::vector<SuiteSpec> specs;
  for (auto& spec : default_grid(c.seed)) {
    if (!a.suites.empty() &&
        std::find(a.suites.begin(), a.suites.end(), to_string(spec.id)) == a.suites.end())
      continue;
    spec.caps.vertex_cap = c.vertex_cap;
    spec.caps.optima_cap = c.optima_cap;
    spec.caps.enumeration_cap = c.enum_cap;
    spec.caps.timeout = c.timeout();
    specs.push_back(std::move(spec));
  }
  const auto rep = run_suites(specs, {c.seed, c.threads, a.timings});
  if (!a.csv_summary.empty()) {
    std::ofstream f(a.csv_summary, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + a.csv_summary);
    f << report_to_csv(rep);
  }
  if (c.format == "json") {
    emit(c, report_to_json(rep).dump(2) + "\n");
  } else if (c.format == "csv") {
    emit(c, report_to_csv(rep));
  } else {
    std::ostringstream os;
    for (const auto& v : rep.verdicts)
      os << to_string(v.status) << ' ' << to_string(v.suite) << ' ' << v.instance << ": "
         << v.reason << '\n';
    os << rep.count(Status::kPass) << " passed, " << rep.count(Status::kFail) << " failed, "
       << rep.count(Status::kSkipped) << " skipped\n";
    if (rep.wall_clock_ms) os << "wall clock ms: " << *rep.wall_clock_ms << '\n';
    emit(c, os.str());
  }
  return rep.passed() ? kExitOk : kExitViolation;
}

// ------------------------------------------------------------- certificate

struct CertArgs {
  std::string family_file;
  std::string centre;
  std::uint64_t samples = 1000;
};

int run_certificate(const Common& c, const KRN& krn, const CertArgs& a) {
  std::optional<Family> f;
  if (!a.family_file.empty()) {
    f = family_from_json(read_json(a.family_file));
  } else {
    if (krn.k == 0 || krn.r == 0 || krn.n == 0)
      throw InvalidArgument("--star needs --k, --r and --n");
    f = star(krn.instance(), parse_pair(a.centre));
  }
  const bool flip = f->instance().k() > f->instance().n();
  if (flip) f = transpose(*f);
  DoubleCountOptions opts;
  opts.enumeration_cap = c.enum_cap;
  opts.samples = a.samples;
  opts.seed = c.seed;
  opts.threads = c.threads;
  const auto cert = double_count_check(*f, opts);
  auto doc = certificate_to_json(cert);
  doc["transposed"] = flip;
  if (c.format == "text") doc.erase("perOrderingCounts");
  emit(c, render_object(doc, c.format));
  return cert.holds() ? kExitOk : kExitViolation;
}

// --------------------------------------------------------------- transpose

struct TransposeArgs {
  std::string family_file;
  std::string member;
};

int run_transpose(const Common& c, const TransposeArgs& a) {
  if (!a.member.empty()) {
    const auto g = transpose(parse_member(a.member));
    if (c.format == "json")
      emit(c, member_to_json(g).dump() + "\n");
    else
      emit(c, g.to_string() + "\n");
    return kExitOk;
  }
  const auto f = transpose(family_from_json(read_json(a.family_file)));
  std::ostringstream os;
  if (c.format == "json") {
    os << family_to_json(f).dump(2) << '\n';
  } else {
    if (c.format == "csv") os << "rank,member\n";
    for (auto i : f.ranks())
      os << i << (c.format == "csv" ? "," : "\t")
         << (c.format == "csv" ? csv_field(unrank(i, f.instance()).to_string())
                               : unrank(i, f.instance()).to_string())
         << '\n';
  }
  emit(c, os.str());
  return kExitOk;
}

// -------------------------------------------------------- no-good-ordering

int run_no_good(const Common& c, std::uint32_t n) {
  const bool none = no_good_ordering_exists(n);
  const Json doc = {{"n", n},
                    {"orderingsChecked", n == 2 ? 6 : 40320},
                    {"nGoodOrderingFound", !none}};
  emit(c, render_object(doc, c.format));
  return none ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersecting families of generalised permutations: enumeration, cycle-method "
               "checks, exact extremal search and certificates.",
               "ekr"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  app.footer(
      "Caps and timeouts also read EKR_TIMEOUT, EKR_THREADS, EKR_VERTEX_CAP, EKR_ENUM_CAP and "
      "EKR_OPTIMA_CAP; a flag on the command line wins over the environment.\n"
      "Exit status: 0 success or PASS, 1 a checked claim failed, 2 usage or input error.");

  Common common;
  KRN krn;

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List every member of P(k,r,n) by rank");
  add_krn(enumerate_cmd, krn);
  add_common(enumerate_cmd, common);

  TauArgs tau_args;
  auto* tau_cmd = app.add_subcommand("tau-table", "Print the label grid of tau or tau_{phi,psi}");
  add_krn(tau_cmd, krn, false);
  tau_cmd->add_option("--phi", tau_args.phi, "Permutation of [k] as images, e.g. 2,1,3");
  tau_cmd->add_option("--psi", tau_args.psi, "Permutation of [n] as images");
  add_common(tau_cmd, common);

  GoodArgs good_args;
  auto* good_cmd = app.add_subcommand(
      "check-good", "Test r-goodness of tau, of an ordering file, or across T(k,n)");
  good_cmd->add_option("--k", krn.k, "Size of the x range");
  good_cmd->add_option("--n", krn.n, "Size of the y range");
  auto* ord_opt = good_cmd->add_option("--ordering", good_args.ordering_file,
                                       "JSON list of [x,y] in label order")
                      ->check(CLI::ExistingFile);
  good_cmd->add_option("--r", good_args.rs, "Window lengths to test (default 1..min(k,n)-1)");
  auto* all_opt = good_cmd->add_flag("--all", good_args.all, "Check every ordering in T(k,n)");
  auto* samples_opt =
      good_cmd->add_option("--samples", good_args.samples, "Check this many seeded random orderings");
  all_opt->excludes(samples_opt)->excludes(ord_opt);
  samples_opt->excludes(ord_opt);
  add_common(good_cmd, common);

  LemmaArgs lemma_args;
  auto* lemma_cmd = app.add_subcommand(
      "lemma-count", "Count the orderings of T(k,n) each member meets, against the closed form");
  add_krn(lemma_cmd, krn);
  lemma_cmd->add_option("--member", lemma_args.member, "One member as x,y;x,y;...");
  lemma_cmd->add_option("--samples", lemma_args.samples, "Estimate by sampling (needs --member)");
  add_common(lemma_cmd, common);

  KatonaArgs katona_args;
  auto* katona_cmd =
      app.add_subcommand("katona", "Largest intersecting family of cyclic r-windows on m points");
  katona_cmd->add_option("--m", katona_args.m, "Number of points on the cycle");
  katona_cmd->add_option("--r", katona_args.r, "Window length")->required();
  auto* cycle_opt =
      katona_cmd->add_option("--cycle", katona_args.cycle, "Explicit cyclic order, e.g. 3,0,2,1");
  katona_cmd->add_option("--samples", katona_args.samples, "Check this many seeded random orders")
      ->excludes(cycle_opt);
  add_common(katona_cmd, common);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand(
      "solve", "Exact maximum intersecting family; k > n is solved on the transpose");
  add_krn(solve_cmd, krn);
  auto* opt_flag = solve_cmd->add_flag("--enumerate-optima", solve_args.enumerate_optima,
                                       "List every optimum and classify it");
  solve_cmd->add_option("--export-dimacs", solve_args.dimacs, "Write the intersection graph here");
  solve_cmd->add_option("--seed-bound", solve_args.seed_bound, "Start the search at this size")
      ->excludes(opt_flag);
  solve_cmd->add_flag("--timings", solve_args.timings, "Include elapsed time");
  add_common(solve_cmd, common);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run the conformance suites");
  verify_cmd->add_option("--suite", verify_args.suites, "Run only these suites (repeatable)")
      ->check([](const std::string& s) {
        return suite_from_string(s) ? std::string() : "unknown suite " + s;
      });
  verify_cmd->add_option("--csv-summary", verify_args.csv_summary, "Also write a CSV table here");
  verify_cmd->add_flag("--timings", verify_args.timings, "Record wall-clock time in the report");
  add_common(verify_cmd, common);

  CertArgs cert_args;
  auto* cert_cmd = app.add_subcommand(
      "certificate", "Double-count a family against T(k,n) to bound its size");
  cert_cmd->add_option("--k", krn.k, "Size of the x range (with --star)");
  cert_cmd->add_option("--r", krn.r, "Pairs per member (with --star)");
  cert_cmd->add_option("--n", krn.n, "Size of the y range (with --star)");
  auto* fam_opt = cert_cmd->add_option("--family", cert_args.family_file, "Family document")
                      ->check(CLI::ExistingFile);
  auto* star_opt = cert_cmd->add_option("--star", cert_args.centre, "Use the star with centre x,y");
  fam_opt->excludes(star_opt);
  cert_cmd->add_option("--samples", cert_args.samples,
                       "Orderings sampled when k!n! exceeds --enum-cap")
      ->capture_default_str();
  add_common(cert_cmd, common);

  TransposeArgs tr_args;
  auto* tr_cmd = app.add_subcommand("transpose", "Swap coordinates of a family or member");
  auto* tr_fam = tr_cmd->add_option("--family", tr_args.family_file, "Family document")
                     ->check(CLI::ExistingFile);
  auto* tr_mem = tr_cmd->add_option("--member", tr_args.member, "One member as x,y;x,y;...");
  tr_fam->excludes(tr_mem);
  add_common(tr_cmd, common);

  std::uint32_t ng_n = 0;
  auto* ng_cmd = app.add_subcommand(
      "no-good-ordering", "Exhaustively confirm no n-good cyclic ordering of [n]x[n] exists");
  ng_cmd->add_option("--n", ng_n, "2 or 3")->required();
  add_common(ng_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerate_cmd) return run_enumerate(common, krn);
    if (*tau_cmd) return run_tau_table(common, krn, tau_args);
    if (*good_cmd) {
      if (good_args.ordering_file.empty() && (krn.k == 0 || krn.n == 0))
        throw InvalidArgument("check-good needs --ordering or both --k and --n");
      return run_check_good(common, krn, good_args);
    }
    if (*lemma_cmd) return run_lemma_count(common, krn, lemma_args);
    if (*katona_cmd) return run_katona(common, katona_args);
    if (*solve_cmd) return run_solve(common, krn, solve_args);
    if (*verify_cmd) return run_verify(common, verify_args);
    if (*cert_cmd) {
      if (cert_args.family_file.empty() && cert_args.centre.empty())
        throw InvalidArgument("certificate needs --family or --star");
      return run_certificate(common, krn, cert_args);
    }
    if (*tr_cmd) {
      if (tr_args.family_file.empty() && tr_args.member.empty())
        throw InvalidArgument("transpose needs --family or --member");
      return run_transpose(common, tr_args);
    }
    if (*ng_cmd) return run_no_good(common, ng_n);
  } catch (const Error& e) {
    std::cerr << "ekr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ekr: unexpected error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
