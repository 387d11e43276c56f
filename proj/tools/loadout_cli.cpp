// Command-line front end: design construction, loadout enumeration,
// verification, cyclic-polytope queries, array counting, bounds, and sweeps.
// Exit codes: 0 success, 2 invalid arguments, 3 mathematically unresolved
// (non-generic design or sign not certifiable at the precision cap).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loadout/loadout.hpp"

namespace {

using loadout::serialize::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnresolved = 3;

struct CommonFlags {
    std::string kind = "moment";
    int n = 0;
    int m = 0;
    std::string t_list;
    std::string M_value;
    std::string design_path;
    long cap = loadout::cyclic::kEnumerationCap;
    int jobs = 1;
    long precision_bits = loadout::kMaxPrecisionBits;
    std::string perturb;
};

std::vector<int> parse_int_list(const std::string& s) {
    // Accepts "3,5,7" and ranges "3..12".
    std::vector<int> out;
    auto range_pos = s.find("..");
    if (range_pos != std::string::npos) {
        int lo = std::stoi(s.substr(0, range_pos));
        int hi = std::stoi(s.substr(range_pos + 2));
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

loadout::Design design_from_flags(const CommonFlags& f) {
    if (!f.design_path.empty()) {
        json j;
        if (f.design_path == "-") {
            std::cin >> j;
        } else {
            std::ifstream in(f.design_path);
            if (!in) throw loadout::ParseError("cannot open " + f.design_path);
            in >> j;
        }
        return loadout::serialize::design_from_json(j);
    }
    const loadout::DesignKind kind = loadout::kind_from_name(f.kind);
    switch (kind) {
        case loadout::DesignKind::MomentCurve: {
            std::optional<std::vector<loadout::Rational>> t;
            if (!f.t_list.empty()) {
                std::vector<loadout::Rational> vals;
                std::stringstream ss(f.t_list);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    vals.push_back(loadout::parse_rational(tok));
                t = std::move(vals);
            }
            std::optional<loadout::Rational> M;
            if (!f.M_value.empty()) M = loadout::parse_rational(f.M_value);
            return loadout::moment_curve_design(f.n, f.m, t, M);
        }
        case loadout::DesignKind::ExactM3: return loadout::exact_design_m3(f.n);
        case loadout::DesignKind::ExactM2: return loadout::exact_design_m2(f.n);
        case loadout::DesignKind::Identity: return loadout::identity_design(f.n);
        case loadout::DesignKind::User:
            throw loadout::InvalidParams("kind=user requires --design");
    }
    throw loadout::InvalidParams("unreachable design kind");
}

loadout::Design maybe_perturb(loadout::Design d, const CommonFlags& f) {
    if (f.perturb.empty()) return d;
    return loadout::perturb_costs(d, loadout::parse_rational(f.perturb));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void add_design_flags(CLI::App* cmd, CommonFlags& f, bool with_construction = true) {
    if (with_construction) {
        cmd->add_option("--kind", f.kind, "design kind: moment|exact_m3|exact_m2|identity|user");
        cmd->add_option("--n", f.n, "number of columns");
        cmd->add_option("--m", f.m, "number of rows");
        cmd->add_option("--t", f.t_list, "comma-separated moment-curve parameters");
        cmd->add_option("--M", f.M_value, "moment-curve offset constant");
    }
    cmd->add_option("--design", f.design_path, "design JSON path, or - for stdin");
    cmd->add_option("--cap", f.cap, "enumeration cap");
    cmd->add_option("--jobs", f.jobs, "worker thread count");
    cmd->add_option("--precision-bits", f.precision_bits, "interval precision cap");
    cmd->add_option("--perturb", f.perturb, "rational delta added to every cost entry");
}

int run(int argc, char** argv) {
    CLI::App app{"Exact loadout-diversity toolkit"};
    app.require_subcommand(1);

    CommonFlags f;
    int k = 0;
    int s = -1;
    std::string mode = "inequality";
    std::string method = "both";
    std::string format = "json";
    std::string parity;
    std::vector<int> subset;
    std::string n_list;
    std::string k_list;
    std::optional<unsigned> seed;
    bool asymptotic = false;

    CLI::App* c_design = app.add_subcommand("design", "construct a design and print it");
    add_design_flags(c_design, f);

    CLI::App* c_loadouts = app.add_subcommand("loadouts", "enumerate k-loadouts");
    add_design_flags(c_loadouts, f);
    c_loadouts->add_option("--k", k, "loadout size")->required();
    c_loadouts->add_option("--mode", mode, "equality|inequality");

    CLI::App* c_verify = app.add_subcommand("verify", "verify one subset as a loadout");
    add_design_flags(c_verify, f);
    c_verify->add_option("--mode", mode, "equality|inequality");
    c_verify->add_option("--method", method, "cells|oracle|both");
    c_verify->add_option("--seed", seed, "random positive witness for the LP oracle");
    c_verify->add_option("subset", subset, "1-indexed column subset")->required();

    CLI::App* c_cyclic = app.add_subcommand("cyclic", "cyclic-polytope face data");
    c_cyclic->add_option("--n", f.n)->required();
    c_cyclic->add_option("--m", f.m)->required();
    c_cyclic->add_option("--k", k, "also list the k-subsets spanning faces");
    c_cyclic->add_option("--parity", parity, "facet filter: odd|even");
    c_cyclic->add_option("--cap", f.cap);

    CLI::App* c_arrays = app.add_subcommand("arrays", "count star/dot arrays");
    c_arrays->add_option("--n", f.n)->required();
    c_arrays->add_option("--k", k)->required();
    c_arrays->add_option("--s", s, "odd inner block count")->required();
    c_arrays->add_option("--parity", parity, "last border block parity: odd|even");

    CLI::App* c_bounds = app.add_subcommand("bounds", "loadout-count bounds");
    c_bounds->add_option("--n", n_list)->required();
    c_bounds->add_option("--m", f.m)->required();
    c_bounds->add_option("--k", k)->required();
    c_bounds->add_flag("--asymptotic", asymptotic, "emit the face-count ratio table");

    CLI::App* c_sweep = app.add_subcommand("sweep", "bounds vs achieved counts");
    c_sweep->add_option("--kind", f.kind)->required();
    c_sweep->add_option("--n", n_list, "range (3..12) or comma list")->required();
    c_sweep->add_option("--m", f.m)->required();
    c_sweep->add_option("--k", k_list, "comma list of loadout sizes")->required();
    c_sweep->add_option("--method", method, "cells|oracle|both");
    c_sweep->add_option("--format", format, "json|csv");
    c_sweep->add_option("--cap", f.cap);
    c_sweep->add_option("--jobs", f.jobs);
    c_sweep->add_option("--precision-bits", f.precision_bits);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (c_design->parsed()) {
        emit(loadout::serialize::to_json(maybe_perturb(design_from_flags(f), f)));
        return kExitOk;
    }

    if (c_loadouts->parsed()) {
        loadout::Design d = maybe_perturb(design_from_flags(f), f);
        loadout::cells::EnumOptions opts{f.cap, f.jobs};
        loadout::cells::EnumerationResult r =
            mode == "equality" ? loadout::cells::enumerate_equality_loadouts(d, k, opts)
            : mode == "inequality"
                ? loadout::cells::enumerate_inequality_loadouts(d, k, opts)
                : throw loadout::InvalidParams("--mode must be equality or inequality");
        emit(loadout::serialize::to_json(r));
        return r.non_generic ? kExitUnresolved : kExitOk;
    }

    if (c_verify->parsed()) {
        loadout::Design d = maybe_perturb(design_from_flags(f), f);
        std::sort(subset.begin(), subset.end());
        const bool ineq = mode == "inequality";
        json out;
        out["subset"] = loadout::serialize::to_json(subset);
        out["mode"] = mode;
        bool unresolved = false;
        if (method == "cells" || method == "both") {
            loadout::cells::CellResult r =
                ineq ? loadout::cells::inequality_cell_certificate(d, subset,
                                                                   f.precision_bits)
                     : loadout::cells::cell_certificate(d, subset, false,
                                                        f.precision_bits);
            out["cells"] = loadout::serialize::to_json(r);
            unresolved |= r.status == loadout::cells::CellStatus::NonGeneric;
        }
        if (method == "oracle" || method == "both") {
            std::optional<loadout::Vec<loadout::Rational>> witness;
            if (seed) {
                std::mt19937 rng(*seed);
                std::uniform_int_distribution<int> num(1, 9), den(1, 9);
                loadout::Vec<loadout::Rational> x(d.n, loadout::Rational(0));
                for (int j : subset) x[j - 1] = loadout::make_rational(num(rng), den(rng));
                witness = std::move(x);
            }
            out["oracle"] = loadout::serialize::to_json(
                loadout::lp::verify_loadout(d, subset, witness));
        }
        emit(out);
        return unresolved ? kExitUnresolved : kExitOk;
    }

    if (c_cyclic->parsed()) {
        json out = loadout::serialize::to_json(loadout::cyclic::fvector(f.n, f.m));
        if (c_cyclic->count("--k") > 0) {
            json faces = json::array();
            for (const auto& sub : loadout::cyclic::enumerate_faces(f.n, f.m, k, f.cap))
                faces.push_back(loadout::serialize::to_json(sub));
            out["faces_k"] = k;
            out["faces"] = std::move(faces);
        }
        if (!parity.empty()) {
            const loadout::cyclic::Parity p = parity == "odd"
                                                  ? loadout::cyclic::Parity::Odd
                                                  : loadout::cyclic::Parity::Even;
            json facets = json::array();
            for (const auto& sub : loadout::cyclic::enumerate_facets(f.n, f.m, p, f.cap))
                facets.push_back(loadout::serialize::to_json(sub));
            out["facets_parity"] = parity;
            out["facets"] = std::move(facets);
        }
        emit(out);
        return kExitOk;
    }

    if (c_arrays->parsed()) {
        std::optional<loadout::cyclic::Parity> p;
        if (!parity.empty())
            p = parity == "odd" ? loadout::cyclic::Parity::Odd
                                : loadout::cyclic::Parity::Even;
        json out{{"n", f.n}, {"k", k}, {"s", s}};
        if (p) out["parity"] = parity;
        out["count"] = loadout::serialize::to_json(loadout::cyclic::count_arrays(f.n, k, s, p));
        emit(out);
        return kExitOk;
    }

    if (c_bounds->parsed()) {
        std::vector<int> ns = parse_int_list(n_list);
        if (asymptotic) {
            emit(loadout::serialize::to_json(loadout::bounds::asymptotic_report(f.m, k, ns)));
            return kExitOk;
        }
        json rows = json::array();
        for (int n : ns) {
            std::string label;
            json row{{"n", n}, {"m", f.m}, {"k", k}};
            row["lower"] = loadout::serialize::to_json(
                loadout::bounds::lower_bound(n, f.m, k, &label));
            row["lower_case"] = label;
            row["upper"] =
                loadout::serialize::to_json(loadout::bounds::upper_bound(n, f.m, k));
            rows.push_back(std::move(row));
        }
        emit(rows.size() == 1 ? rows[0] : json{{"rows", rows}});
        return kExitOk;
    }

    if (c_sweep->parsed()) {
        const auto kind = loadout::kind_from_name(f.kind);
        const auto m = loadout::bounds::SweepMethod{
            method == "cells"    ? loadout::bounds::SweepMethod::Cells
            : method == "oracle" ? loadout::bounds::SweepMethod::Oracle
                                 : loadout::bounds::SweepMethod::Both};
        loadout::cells::EnumOptions opts{f.cap, f.jobs};
        std::vector<loadout::bounds::BoundReport> rows = loadout::bounds::sweep(
            kind, parse_int_list(n_list), f.m, parse_int_list(k_list), m, opts,
            f.precision_bits);
        bool unresolved = false;
        if (format == "csv") {
            std::cout << loadout::serialize::sweep_csv_header() << "\n";
            for (const auto& r : rows) {
                std::cout << loadout::serialize::sweep_csv_row(r) << "\n";
                unresolved |= r.status == "non_generic";
            }
        } else {
            json out = json::array();
            for (const auto& r : rows) {
                out.push_back(loadout::serialize::to_json(r));
                unresolved |= r.status == "non_generic";
            }
            emit(out);
        }
        return unresolved ? kExitUnresolved : kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const loadout::IndeterminateSign& e) {
        std::cout << json{{"error", "indeterminate_sign"}, {"detail", e.what()}}.dump(2)
                  << "\n";
        return kExitUnresolved;
    } catch (const loadout::InvalidParams& e) {
        std::cout << json{{"error", "invalid_params"}, {"detail", e.what()}}.dump(2)
                  << "\n";
        return kExitUsage;
    } catch (const loadout::ParseError& e) {
        std::cout << json{{"error", "parse_error"}, {"detail", e.what()}}.dump(2) << "\n";
        return kExitUsage;
    } catch (const loadout::EnumerationTooLarge& e) {
        std::cout << json{{"error", "enumeration_too_large"}, {"detail", e.what()}}.dump(2)
                  << "\n";
        return kExitUsage;
    } catch (const loadout::Error& e) {
        std::cout << json{{"error", "internal"}, {"detail", e.what()}}.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << json{{"error", "internal"}, {"detail", e.what()}}.dump(2) << "\n";
        return 1;
    }
}
