#ifndef LOADOUT_SERIALIZE_HPP
#define LOADOUT_SERIALIZE_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "loadout/bounds.hpp"
#include "loadout/cells.hpp"
#include "loadout/cyclic.hpp"
#include "loadout/design.hpp"
#include "loadout/errors.hpp"
#include "loadout/interval.hpp"
#include "loadout/matrix.hpp"
#include "loadout/rational.hpp"
#include "loadout/simplex.hpp"

// JSON (and sweep CSV) encoding. Rationals render as exact "p/q" strings;
// intervals as {lo, hi, bits} decimal-endpoint objects; big integers fall
// back to strings once they leave the 53-bit exactly-representable range.

namespace loadout::serialize {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const Integer& v) {
    static const Integer lim = Integer(1) << 53;
    if (v < lim && v > -lim) return v.get_si();
    return v.get_str();
}

inline json to_json(const Interval& v) {
    return json{{"lo", v.lower_string()}, {"hi", v.upper_string()}, {"bits", v.precision_bits()}};
}

inline json to_json(const Vec<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline json to_json(const Vec<Interval>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline json to_json(const CostEntry& e) {
    if (e.rational()) return to_string(e.value);
    // The sqrt recipe keeps the design re-loadable at full fidelity; the
    // enclosure fields mirror the generic interval scalar encoding.
    Interval enc = e.enclosure(kDefaultPrecisionBits);
    return json{{"sqrt", to_string(e.value)},
                {"lo", enc.lower_string()},
                {"hi", enc.upper_string()},
                {"bits", enc.precision_bits()}};
}

inline json to_json(const Design& d) {
    json rows = json::array();
    for (int i = 0; i < d.m; ++i) {
        json row = json::array();
        for (int j = 0; j < d.n; ++j) row.push_back(to_json(d.A(i, j)));
        rows.push_back(std::move(row));
    }
    json c = json::array();
    for (const auto& e : d.c) c.push_back(to_json(e));
    json params = json::object();
    for (const auto& [k, v] : d.params) params[k] = v;
    return json{{"m", d.m}, {"n", d.n},     {"kind", kind_name(d.kind)},
                {"A", rows}, {"c", c},      {"params", params}};
}

inline Rational scalar_from_json(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw ParseError("expected a rational scalar (integer or \"p/q\" string)");
}

inline CostEntry cost_from_json(const json& v) {
    if (v.is_object()) {
        if (!v.contains("sqrt"))
            throw ParseError("cost entry object must carry a \"sqrt\" field");
        return CostEntry{parse_rational(v.at("sqrt").get<std::string>()), true};
    }
    return CostEntry{scalar_from_json(v), false};
}

inline Design design_from_json(const json& j) {
    Design d;
    try {
        d.m = j.at("m").get<int>();
        d.n = j.at("n").get<int>();
        d.kind = kind_from_name(j.value("kind", std::string("user")));
        if (d.m < 1 || d.n < 1) throw ParseError("design dimensions must be positive");
        const json& rows = j.at("A");
        if (static_cast<int>(rows.size()) != d.m)
            throw ParseError("design matrix row count mismatch");
        d.A = Matrix<Rational>(d.m, d.n, Rational(0));
        for (int i = 0; i < d.m; ++i) {
            if (static_cast<int>(rows[i].size()) != d.n)
                throw ParseError("design matrix column count mismatch");
            for (int jj = 0; jj < d.n; ++jj) d.A(i, jj) = scalar_from_json(rows[i][jj]);
        }
        const json& c = j.at("c");
        if (static_cast<int>(c.size()) != d.n) throw ParseError("cost length mismatch");
        for (const auto& e : c) d.c.push_back(cost_from_json(e));
        if (j.contains("params"))
            for (const auto& [k, v] : j.at("params").items())
                d.params[k] = v.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed design JSON: ") + e.what());
    }
    return d;
}

inline json to_json(const std::vector<int>& subset) {
    json a = json::array();
    for (int v : subset) a.push_back(v);
    return a;
}

inline json to_json(const cells::DualCertificate& c) {
    return json{{"subset", to_json(c.subset)},
                {"y", to_json(c.y)},
                {"strict_margin", to_json(c.strict_margin)},
                {"positivity_margin",
                 c.positivity_margin ? to_json(*c.positivity_margin) : json(nullptr)},
                {"method", c.method}};
}

inline json to_json(const cells::IntervalCertificate& c) {
    return json{{"subset", to_json(c.subset)},
                {"y", to_json(c.y)},
                {"strict_margin", to_json(c.strict_margin)},
                {"positivity_margin",
                 c.positivity_margin ? to_json(*c.positivity_margin) : json(nullptr)},
                {"method", c.method},
                {"bits", c.bits}};
}

inline const char* cell_status_name(cells::CellStatus s) {
    switch (s) {
        case cells::CellStatus::Cell: return "cell";
        case cells::CellStatus::NotACell: return "not_a_cell";
        case cells::CellStatus::NonGeneric: return "non_generic";
    }
    throw Error("unreachable cell status");
}

inline json to_json(const cells::CellResult& r) {
    json out{{"status", cell_status_name(r.status)}};
    if (r.certificate) out["certificate"] = to_json(*r.certificate);
    if (r.interval_certificate)
        out["certificate"] = to_json(*r.interval_certificate);
    if (r.status == cells::CellStatus::NonGeneric)
        out["tight_columns"] = to_json(r.tight_columns);
    return out;
}

inline const char* lp_status_name(lp::LPStatus s) {
    switch (s) {
        case lp::LPStatus::Optimal: return "optimal";
        case lp::LPStatus::Infeasible: return "infeasible";
        case lp::LPStatus::Unbounded: return "unbounded";
    }
    throw Error("unreachable LP status");
}

inline json to_json(const lp::Solution& s) {
    json out{{"status", lp_status_name(s.status)}};
    if (s.status == lp::LPStatus::Optimal) {
        out["x"] = to_json(s.x);
        out["objective"] = to_json(s.objective);
        out["basis"] = to_json(s.basis);
        out["dual"] = to_json(s.dual);
    }
    return out;
}

inline json to_json(const lp::VerifyResult& r) {
    json out{{"confirmed", r.confirmed}, {"b", to_json(r.b)}};
    out["solution"] = to_json(r.solution);
    if (!r.confirmed) {
        out["note"] = r.note;
        if (!r.actual_support.empty()) out["actual_support"] = to_json(r.actual_support);
        if (r.witness) out["alternative_optimum"] = to_json(*r.witness);
    }
    return out;
}

inline json to_json(const cells::EnumerationResult& r) {
    if (r.non_generic)
        return json{{"status", "non_generic"}, {"witness", to_json(r.witness)}};
    json subsets = json::array();
    for (const auto& s : r.loadouts) subsets.push_back(to_json(s));
    return json{{"status", "ok"},
                {"count", r.loadouts.size()},
                {"loadouts", subsets}};
}

inline json to_json(const cyclic::FVector& f) {
    json entries = json::array();
    for (const auto& e : f.entries) entries.push_back(to_json(e));
    return json{{"n", f.n}, {"m", f.m}, {"f", entries}};
}

inline json to_json(const bounds::BoundReport& r) {
    json out{{"n", r.n},     {"m", r.m},
             {"k", r.k},     {"kind", r.kind},
             {"lower", to_json(r.lower)}, {"lower_case", r.lower_case},
             {"upper", to_json(r.upper)}, {"status", r.status}};
    if (r.secondary_lower) {
        out["secondary_lower"] = to_json(*r.secondary_lower);
        out["secondary_label"] = r.secondary_label;
    }
    out["achieved"] = r.achieved ? to_json(*r.achieved) : json(nullptr);
    out["tight"] = r.tight ? json(*r.tight) : json(nullptr);
    out["runtime_ms"] = r.runtime_ms;
    return out;
}

inline json to_json(const bounds::AsymptoticReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"n", row.n},
                            {"f_n", to_json(row.f_at_n)},
                            {"f_next", to_json(row.f_at_next)},
                            {"ratio", to_json(row.ratio)}});
    return json{{"m", r.m},
                {"k", r.k},
                {"rows", rows},
                {"monotone_nondecreasing", r.monotone_nondecreasing}};
}

inline std::string sweep_csv_header() {
    return "n,m,k,kind,lower,achieved,upper,tight,runtime_ms";
}

inline std::string sweep_csv_row(const bounds::BoundReport& r) {
    std::string out = std::to_string(r.n) + "," + std::to_string(r.m) + "," +
                      std::to_string(r.k) + "," + r.kind + "," + to_string(r.lower) + ",";
    out += r.achieved ? r.achieved->get_str() : std::string("");
    out += "," + r.upper.get_str() + ",";
    out += r.tight ? (*r.tight ? "true" : "false") : "";
    out += "," + std::to_string(r.runtime_ms);
    return out;
}

}  // namespace loadout::serialize

#endif
