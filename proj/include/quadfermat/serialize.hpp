// JSON renderings of the report types. Key layout is fixed and every report
// carries the schema version and the search bounds it was produced with, so
// outputs are byte-stable across runs.
#pragma once

#include "quadfermat/criterion.hpp"
#include "quadfermat/density.hpp"
#include "quadfermat/frey.hpp"
#include "quadfermat/mersenne.hpp"

#include <json.hpp>

namespace qf {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

inline std::string str(const Int& n) { return n.get_str(); }
inline std::string str(const Rat& q) { return q.get_str(); }

inline Json to_json(const QuadElement& e) {
    return Json{{"text", e.str()},
                {"x", str(e.x())},
                {"y", str(e.y())},
                {"den", str(e.den())}};
}

inline Json to_json(const ParamSolution& p) {
    return Json{{"eta1", p.eta1}, {"eta2", p.eta2}, {"r1", p.r1},
                {"r2", p.r2},     {"v", str(p.v)},  {"d", str(p.d)}};
}

inline Json to_json(const PrimeValuations& row) {
    return Json{{"prime", row.prime.name()},
                {"e", row.prime.e},
                {"f", row.prime.f},
                {"ord_2", row.prime.ord_of_2()},
                {"ord_lambda", row.ord_lambda},
                {"ord_mu", row.ord_mu},
                {"ord_lambdamu", row.ord_lambdamu}};
}

inline Json to_json(const SplittingData& s) {
    Json primes = Json::array();
    for (const auto& p : s.S)
        primes.push_back(Json{{"id", p.name()}, {"e", p.e}, {"f", p.f}});
    Json names_T = Json::array(), names_U = Json::array();
    for (const auto& p : s.T) names_T.push_back(p.name());
    for (const auto& p : s.U) names_U.push_back(p.name());
    return Json{{"kind", to_string(s.kind)}, {"S", primes}, {"T", names_T}, {"U", names_U}};
}

inline Json orbit_to_json(const OrbitClass& oc, const SplittingData& splitting) {
    Json members = Json::array();
    for (const auto& m : oc.members) members.push_back(m.lambda.str());
    Json vals = Json::array();
    for (const auto& row : compute_valuations(oc.representative, splitting))
        vals.push_back(to_json(row));
    return Json{{"lambda", oc.representative.lambda.str()},
                {"mu", oc.representative.mu.str()},
                {"param", to_json(oc.rep_param)},
                {"valuations", vals},
                {"members", members}};
}

inline Json to_json(const Classification& cls, const SquarefreeD& d) {
    SplittingData splitting = splitting_of_two(d);
    Json orbits = Json::array();
    for (const auto& oc : cls.orbits) orbits.push_back(orbit_to_json(oc, splitting));
    return Json{{"schema_version", kSchemaVersion},
                {"d", str(d.value())},
                {"splitting", to_json(splitting)},
                {"relevant_orbits", orbits},
                {"n_orbits", cls.orbits.size()},
                {"complete", cls.complete},
                {"bounds", Json{{"r1", cls.r1_bound}, {"s_max", cls.s_max}}}};
}

inline Json to_json(const ConditionResult& c) {
    Json j{{"holds", c.holds}};
    if (c.witness)
        j["witness"] = (*c.witness == PrimeAbove2::Id::P1) ? "P1" : "P2";
    else
        j["witness"] = nullptr;
    return j;
}

inline Json to_json(const OrbitReport& r) {
    Json vals = Json::array();
    for (const auto& row : r.valuations) vals.push_back(to_json(row));
    Json j{{"irrelevant", r.irrelevant},
           {"lambda", r.representative.lambda.str()},
           {"mu", r.representative.mu.str()}};
    j["param"] = r.param ? to_json(*r.param) : Json(nullptr);
    j["valuations"] = vals;
    j["condition_A"] = to_json(r.condA);
    j["condition_B"] = to_json(r.condB);
    j["passes"] = r.passes();
    return j;
}

inline Json to_json(const Verdict& v) {
    Json orbits = Json::array();
    for (const auto& r : v.orbits) orbits.push_back(to_json(r));
    Json failing = Json::array();
    for (size_t i : v.failing_orbits) failing.push_back(i);
    return Json{{"schema_version", kSchemaVersion},
                {"d", str(v.d)},
                {"outcome", to_string(v.outcome)},
                {"provenance", v.provenance},
                {"fast_path_class", to_string(v.fast_path)},
                {"es_dependent", v.es_dependent},
                {"splitting", to_json(v.splitting)},
                {"orbits", orbits},
                {"failing_orbits", failing},
                {"classification_complete", v.classification_complete},
                {"bounds", Json{{"r1", v.r1_bound}, {"s_max", v.s_max}}}};
}

inline Json to_json(const DensityReport& rep) {
    Json witnesses = Json::array();
    for (const auto& [d, p] : rep.witnesses)
        witnesses.push_back(Json{{"d", str(d)}, {"witness", to_json(p)}});
    return Json{{"schema_version", kSchemaVersion},
                {"X", rep.X},
                {"r1_max", rep.r1_max},
                {"n_sf", rep.n_sf},
                {"n_C_prime_found", rep.n_C_prime_found},
                {"n_C", rep.n_C},
                {"n_D", rep.n_D},
                {"rel_density_C",
                 Json{{"exact", str(rep.rel_density_C)},
                      {"decimal", rep.rel_density_C.get_d()}}},
                {"rel_density_D",
                 Json{{"exact", str(rep.rel_density_D)},
                      {"decimal", rep.rel_density_D.get_d()}}},
                {"flags", rep.flags},
                {"witnesses", witnesses}};
}

inline Json to_json(const ApCount& ap, unsigned long r, unsigned long N, uint64_t X) {
    return Json{{"schema_version", kSchemaVersion}, {"r", r},
                {"N", N},                           {"X", X},
                {"count", ap.count},                {"predicted", ap.predicted}};
}

inline Json to_json(const MersenneData& md) {
    Json factors = Json::array();
    for (const auto& [p, e] : md.factors)
        factors.push_back(Json{{"p", str(p)}, {"e", e}});
    Json prim = Json::array();
    for (const auto& p : md.primitive_divisors) prim.push_back(str(p));
    DensityBound db = density_bound(md.m, std::max(md.m, kMersenneFactorCap));
    return Json{{"schema_version", kSchemaVersion},
                {"m", md.m},
                {"value", str(md.value)},
                {"factors", factors},
                {"complete", md.complete},
                {"omega", md.omega},
                {"primitive_divisors", prim},
                {"has_primitive", md.has_primitive()},
                {"density_bound",
                 Json{{"h", db.h},
                      {"h_exact", db.h_exact},
                      {"bound", str(db.bound)},
                      {"structural_lower", db.structural_lower}}}};
}

inline Json to_json(const FreyInvariantsInt& f) {
    return Json{{"schema_version", kSchemaVersion},
                {"c4", str(f.c4)},
                {"c6", str(f.c6)},
                {"discriminant", str(f.disc)},
                {"j", str(f.j)}};
}

}  // namespace qf
