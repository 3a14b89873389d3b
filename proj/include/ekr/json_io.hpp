#pragma once

#include <json.hpp>

#include "ekr/cycle.hpp"
#include "ekr/genperm.hpp"
#include "ekr/solver.hpp"

namespace ekr {

using Json = nlohmann::json;

/// Family document: {"k","r","n","members":[[[x,y],...],...]}. On input,
/// "memberRanks":[...] may replace or supplement "members".
Json family_to_json(const Family& f);
Family family_from_json(const Json& doc);

Json member_to_json(const GenPerm& g);
GenPerm member_from_json(const Json& j);

/// Ordering document: a bare list of [x, y] in label order. k and n are
/// taken as the largest coordinates present.
Json ordering_to_json(const CyclicOrdering& o);
CyclicOrdering ordering_from_json(const Json& doc);

Json instance_to_json(const Instance& inst);

/// Elapsed time is written only when `with_timing` is set, so reports of
/// identical runs compare byte for byte.
Json solve_report_to_json(const SolveReport& rep, bool with_timing);
Json certificate_to_json(const DoubleCountCertificate& cert);
Json katona_to_json(const KatonaReport& rep);

}  // namespace ekr
