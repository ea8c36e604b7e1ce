#pragma once

// JSON serialization of reports.  Integers and rationals are written as
// decimal strings ({"num", "den"} for rationals) so no precision is lost;
// divided monomials are exponent vectors plus the list of dx indices.

#include "padic/massey.hpp"

#include <json.hpp>

namespace padic {

inline constexpr const char* kReportSchemaVersion = "1.0";

using Json = nlohmann::ordered_json;

inline Json to_json(const BigInt& x) { return x.get_str(); }

inline Json to_json(const Rational& q) { return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

inline Json to_json(const IntVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

inline Json to_json(const RatVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

inline Json to_json(const RingTag& r) {
    return Json{{"name", r.name()}, {"prime", r.prime}, {"exponent", r.exponent}};
}

inline Json to_json(const DividedMonomial& m) {
    Json dx = Json::array();
    for (int k = 1; k <= m.n(); ++k)
        if (m.has_dx(k)) dx.push_back(k);
    return Json{{"exponents", m.a}, {"dx", dx}, {"text", m.str()}};
}

inline Json to_json(const AbelianGroupReport& h, const std::vector<std::string>& labels = {}) {
    Json torsion = Json::array();
    for (const auto& t : h.torsion) torsion.push_back(t.get_str());
    Json gens = Json::array();
    for (std::size_t i = 0; i < h.generators.size(); ++i) {
        Json g{{"order", h.orders[i].get_str()}, {"cocycle", to_json(h.generators[i])}};
        if (i < labels.size()) g["label"] = labels[i];
        gens.push_back(std::move(g));
    }
    Json out{{"free_rank", h.free_rank}, {"torsion", torsion}, {"generators", gens}};
    if (!h.prime_to_p_torsion.empty()) {
        Json d = Json::array();
        for (const auto& t : h.prime_to_p_torsion) d.push_back(t.get_str());
        out["prime_to_p_torsion"] = d;
    }
    return out;
}

inline Json to_json(const CohomologyReport& r) {
    Json degrees = Json::array();
    for (std::size_t q = 0; q < r.degrees.size(); ++q) {
        Json d = to_json(r.degrees[q], q < r.labels.size() ? r.labels[q] : std::vector<std::string>{});
        d["degree"] = q;
        if (q < r.stable.size()) d["stable"] = static_cast<bool>(r.stable[q]);
        degrees.push_back(std::move(d));
    }
    Json products = Json::array();
    for (const auto& e : r.products)
        products.push_back(Json{{"a", Json{{"degree", e.deg_a}, {"generator", e.gen_a}}},
                                {"b", Json{{"degree", e.deg_b}, {"generator", e.gen_b}}},
                                {"coordinates", to_json(e.coords)}});
    return Json{{"ring", to_json(r.ring)}, {"degrees", degrees}, {"products", products}, {"notes", r.notes}};
}

inline Json to_json(const OmegaLattice& L) {
    Json degrees = Json::array();
    for (std::size_t k = 0; k < L.bases.size(); ++k) {
        Json mons = Json::array();
        for (const auto& m : L.bases[k].monomials) mons.push_back(to_json(m));
        Json closure = Json::array();
        for (const auto& v : L.closure[k].basis()) closure.push_back(to_json(v));
        degrees.push_back(Json{{"degree", k},
                               {"monomials", mons},
                               {"closure_basis", closure},
                               {"closure_is_divided_power", static_cast<bool>(L.closure_is_dp[k])},
                               {"naive_is_divided_power", static_cast<bool>(L.naive_is_dp[k])}});
    }
    return Json{{"n", L.n}, {"weight", L.W}, {"prime", L.p}, {"admissible_forms", L.admissible}, {"degrees", degrees}};
}

inline Json to_json(const MasseyResult& R) {
    Json ind = Json::array();
    for (std::size_t i = 0; i < R.indeterminacy.size(); ++i)
        ind.push_back(Json{{"cocycle", to_json(R.indeterminacy[i])}, {"class", to_json(R.indeterminacy_classes[i])}});
    return Json{{"degree", R.degree},
                {"representative", to_json(R.representative)},
                {"class", to_json(R.representative_class)},
                {"indeterminacy", ind},
                {"defining_system", Json{{"u", to_json(R.u)}, {"v", to_json(R.v)}}},
                {"vanishes", R.vanishes}};
}

inline Json to_json(const RectificationVerdict& V) {
    Json out{{"verdict", V.verdict()}, {"obstructed", V.obstructed}, {"has_cup1", V.has_cup1}};
    if (V.has_cup1) {
        out["square_times_b"] = to_json(V.square_times_b);
        out["square_in_indeterminacy"] = V.square_in_indeterminacy;
        out["square_is_value"] = V.square_is_value;
    }
    return out;
}

inline Json space_summary(const SimplicialSet& X) {
    return Json{{"label", X.label()}, {"dimension", X.dim()}, {"counts", X.counts()}};
}

/// Envelope shared by every CLI report.
inline Json report_envelope(const std::string& command, const SessionConfig& cfg) {
    return Json{{"schema_version", kReportSchemaVersion},
                {"command", command},
                {"config",
                 Json{{"prime", cfg.prime}, {"precision", cfg.precision}, {"weight", cfg.weight}, {"max_degree", cfg.max_degree}}}};
}

}  // namespace padic
