#include "ekr/json_io.hpp"

#include <algorithm>

#include "ekr/error.hpp"

namespace ekr {

Json member_to_json(const GenPerm& g) {
  Json out = Json::array();
  for (auto p : g.pairs()) out.push_back({p.x, p.y});
  return out;
}

namespace {

OrderedPair pair_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned())
    throw InvalidArgument("expected an [x, y] pair of positive integers, got " + j.dump());
  return {j[0].get<std::uint32_t>(), j[1].get<std::uint32_t>()};
}

std::uint32_t field(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_unsigned())
    throw InvalidArgument(std::string("missing or non-integer field \"") + key + "\"");
  return doc[key].get<std::uint32_t>();
}

}  // namespace

GenPerm member_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("member must be a list of pairs");
  std::vector<OrderedPair> pairs;
  for (const auto& p : j) pairs.push_back(pair_from_json(p));
  return GenPerm(std::move(pairs));
}

Json instance_to_json(const Instance& inst) {
  return {{"k", inst.k()}, {"r", inst.r()}, {"n", inst.n()}};
}

Json family_to_json(const Family& f) {
  Json doc = instance_to_json(f.instance());
  Json members = Json::array();
  for (const auto& m : f.members()) members.push_back(member_to_json(m));
  doc["members"] = std::move(members);
  return doc;
}

Family family_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidArgument("family document must be an object");
  const Instance inst(field(doc, "k"), field(doc, "r"), field(doc, "n"));
  Family f(inst);
  if (!doc.contains("members") && !doc.contains("memberRanks"))
    throw InvalidArgument("family document needs \"members\" or \"memberRanks\"");
  if (doc.contains("members")) {
    if (!doc["members"].is_array()) throw InvalidArgument("\"members\" must be a list");
    for (const auto& m : doc["members"]) {
      auto g = member_from_json(m);
      if (!g.fits(inst)) throw InvalidArgument("member " + g.to_string() + " not in P" + inst.to_string());
      f.insert(g);
    }
  }
  if (doc.contains("memberRanks")) {
    if (!doc["memberRanks"].is_array()) throw InvalidArgument("\"memberRanks\" must be a list");
    for (const auto& r : doc["memberRanks"]) {
      if (!r.is_number_unsigned()) throw InvalidArgument("member rank must be a nonnegative integer");
      f.insert_rank(r.get<Rank>());
    }
  }
  return f;
}

Json ordering_to_json(const CyclicOrdering& o) {
  Json out = Json::array();
  for (auto p : o.pairs()) out.push_back({p.x, p.y});
  return out;
}

CyclicOrdering ordering_from_json(const Json& doc) {
  if (!doc.is_array() || doc.empty()) throw InvalidArgument("ordering must be a nonempty list of [x, y]");
  std::vector<OrderedPair> pairs;
  std::uint32_t k = 0, n = 0;
  for (const auto& p : doc) {
    pairs.push_back(pair_from_json(p));
    k = std::max(k, pairs.back().x);
    n = std::max(n, pairs.back().y);
  }
  return CyclicOrdering(k, n, pairs);
}

namespace {
Json centre_json(OrderedPair c) { return Json::array({c.x, c.y}); }
}  // namespace

Json solve_report_to_json(const SolveReport& rep, bool with_timing) {
  Json doc;
  doc["instance"] = instance_to_json(rep.instance);
  doc["transposed"] = rep.transposed;
  doc["maxSize"] = rep.max_size;
  doc["starBound"] = rep.star_bound;
  doc["exact"] = rep.exact;
  doc["witness"] = family_to_json(rep.witness);
  doc["optimaCount"] = rep.optima_count ? Json(*rep.optima_count) : Json(nullptr);
  doc["optimaCapped"] = rep.optima_capped;
  doc["allOptimaAreStars"] =
      rep.all_optima_are_stars ? Json(*rep.all_optima_are_stars) : Json("not-checked");
  Json centres = Json::array();
  for (auto c : rep.optima_centres) centres.push_back(centre_json(c));
  doc["optimaCentres"] = std::move(centres);
  doc["violation"] = rep.violation ? family_to_json(*rep.violation) : Json(nullptr);
  doc["nodesExplored"] = rep.nodes_explored;
  if (with_timing)
    doc["elapsedMs"] = std::chrono::duration<double, std::milli>(rep.elapsed).count();
  doc["verdict"] = rep.verdict();
  return doc;
}

Json certificate_to_json(const DoubleCountCertificate& cert) {
  Json doc;
  doc["instance"] = instance_to_json(cert.instance);
  doc["familySize"] = cert.family_size;
  doc["exact"] = cert.exact;
  doc["seed"] = cert.seed ? Json(*cert.seed) : Json(nullptr);
  doc["orderings"] = cert.orderings;
  doc["perOrderingCounts"] = cert.per_ordering_counts;
  doc["totalIncidence"] = cert.total_incidence;
  doc["boundLHS"] = cert.bound_lhs;
  doc["maxPerOrdering"] = cert.max_per_ordering;
  doc["expectedTotal"] = cert.expected_total;
  doc["impliedBound"] = cert.implied_bound ? Json(*cert.implied_bound) : Json(nullptr);
  doc["perOrderingWithinR"] = cert.per_ordering_within_r;
  doc["totalMatches"] = cert.total_matches ? Json(*cert.total_matches) : Json(nullptr);
  doc["holds"] = cert.holds();
  return doc;
}

Json katona_to_json(const KatonaReport& rep) {
  return {{"m", rep.m},
          {"r", rep.r},
          {"maxSize", rep.max_size},
          {"optimaCount", rep.optima_count},
          {"allOptimaAreStars", rep.all_optima_are_stars},
          {"nonStarWitness", rep.non_star_witness},
          {"lemmaHolds", rep.lemma_holds}};
}

}  // namespace ekr
