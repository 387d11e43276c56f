#ifndef LOADOUT_BOUNDS_HPP
#define LOADOUT_BOUNDS_HPP

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "loadout/cells.hpp"
#include "loadout/cyclic.hpp"
#include "loadout/design.hpp"
#include "loadout/errors.hpp"
#include "loadout/rational.hpp"
#include "loadout/simplex.hpp"

// Loadout-count bounds, asymptotic ratio tables, and the sweep harness
// comparing achieved counts against the bounds.

namespace loadout::bounds {

/// Largest possible number of k-loadouts over all (m x n)-designs:
/// f_{k-1}(C(n+1, m)) - binomial(m, k-1).
inline Integer upper_bound(int n, int m, int k) {
    if (!(n > m && m >= k && k >= 2))
        throw InvalidParams("upper_bound requires n > m >= k >= 2");
    return cyclic::face_count(n + 1, m, k) - binomial(m, k - 1);
}

/// Guaranteed-achievable number of k-loadouts. m >= 4 uses the scaled
/// cyclic face count (the factor depends on where k sits relative to m/2);
/// m = 3 and m = 2 use the exact tight constructions.
inline Rational lower_bound(int n, int m, int k, std::string* case_label = nullptr) {
    if (!(n > m && m >= k && k >= 2))
        throw InvalidParams("lower_bound requires n > m >= k >= 2");
    auto set_label = [&](const char* s) {
        if (case_label) *case_label = s;
    };
    if (m == 2) {
        set_label("exact m=2");
        return Rational(n - 1);
    }
    if (m == 3) {
        set_label("exact m=3");
        return Rational(k == 3 ? 2 * n - 5 : 3 * n - 6);
    }
    const Rational f(cyclic::face_count(n, m, k));
    if (2 * k < m) {
        set_label("k < m/2");
        return f;
    }
    if (m % 2 == 1) {
        set_label("m odd, k >= m/2");
        return f / 2;
    }
    if (2 * k == m) {
        set_label("k = m/2, m even");
        return f / 2;
    }
    set_label("k > m/2, m even");
    return f / 4;
}

struct AsymptoticRow {
    int n = 0;
    Integer f_at_n;
    Integer f_at_next;
    Rational ratio;  // f_{k-1}(C(n,m)) / f_{k-1}(C(n+1,m)), always < 1
};

struct AsymptoticReport {
    int m = 0, k = 0;
    std::vector<AsymptoticRow> rows;
    bool monotone_nondecreasing = true;  // ratios trend toward 1
};

inline AsymptoticReport asymptotic_report(int m, int k, const std::vector<int>& n_list) {
    if (!(1 <= k && k <= m)) throw InvalidParams("asymptotic_report requires 1 <= k <= m");
    AsymptoticReport rep;
    rep.m = m;
    rep.k = k;
    for (int n : n_list) {
        if (n <= m) throw InvalidParams("asymptotic_report requires n > m");
        AsymptoticRow row;
        row.n = n;
        row.f_at_n = cyclic::face_count(n, m, k);
        row.f_at_next = cyclic::face_count(n + 1, m, k);
        row.ratio = Rational(row.f_at_n) / Rational(row.f_at_next);
        if (!rep.rows.empty() && row.ratio < rep.rows.back().ratio)
            rep.monotone_nondecreasing = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

enum class SweepMethod { Cells, Oracle, Both };

struct BoundReport {
    int n = 0, m = 0, k = 0;
    std::string kind;
    Integer upper;
    Rational lower;
    std::string lower_case;
    std::optional<Rational> secondary_lower;  // generic-case value when m in {2,3}
    std::string secondary_label;
    std::optional<Integer> achieved;
    std::optional<bool> tight;
    std::string status = "ok";  // "ok" | "non_generic" | "error: ..."
    double runtime_ms = 0;
};

namespace detail {

/// The 3-subset certificate families that witness every 3-loadout of the
/// tight m = 3 design: {1, j, j+1} for j = 2..n-1 and {2, j, j+1} for
/// j = 3..n-1.
inline std::vector<cells::Subset> m3_certificate_families(int n) {
    std::vector<cells::Subset> fams;
    for (int j = 2; j <= n - 1; ++j) fams.push_back({1, j, j + 1});
    for (int j = 3; j <= n - 1; ++j) fams.push_back({2, j, j + 1});
    return fams;
}

/// Achieved count for the irrational m = 3 design: certify every family as
/// an inequality cell with interval margins, then count the size-k subsets
/// of the certified cells (subsets of inequality cells are loadouts).
inline Integer m3_achieved(const Design& d, int k, long precision_cap) {
    std::set<cells::Subset> loadouts;
    for (const cells::Subset& fam : m3_certificate_families(d.n)) {
        cells::CellResult r = cells::inequality_cell_certificate(d, fam, precision_cap);
        if (r.status != cells::CellStatus::Cell)
            throw Error("m=3 certificate family failed inequality-cell certification");
        for (cells::Subset& s : cells::detail::k_subsets_of(fam, k))
            loadouts.insert(std::move(s));
    }
    return Integer(loadouts.size());
}

/// Independent oracle count: test every k-subset through the LP.
inline Integer oracle_achieved(const Design& d, int k, long cap) {
    Integer count = 0;
    cyclic::detail::for_each_subset(d.n, k, cap, [&](const cells::Subset& s) {
        if (lp::verify_loadout(d, s).confirmed) ++count;
    });
    return count;
}

}  // namespace detail

/// One sweep row: bounds plus the achieved inequality-loadout count for the
/// named construction. Enumeration failures are recorded in the row status
/// instead of aborting the sweep.
inline BoundReport sweep_row(DesignKind kind, int n, int m, int k,
                             SweepMethod method = SweepMethod::Cells,
                             const cells::EnumOptions& opts = {},
                             long precision_cap = kMaxPrecisionBits) {
    BoundReport rep;
    rep.n = n;
    rep.m = m;
    rep.k = k;
    rep.kind = kind_name(kind);
    rep.upper = upper_bound(n, m, k);
    rep.lower = lower_bound(n, m, k, &rep.lower_case);
    if (m <= 3 && kind == DesignKind::MomentCurve) {
        // For moment-curve designs at small m, also report the generic-case
        // value next to the exact-construction bound.
        const Rational f(cyclic::face_count(n, m, k));
        if (2 * k < m) {
            rep.secondary_lower = f;
            rep.secondary_label = "generic k < m/2";
        } else if (m % 2 == 1) {
            rep.secondary_lower = f / 2;
            rep.secondary_label = "generic m odd, k >= m/2";
        } else {
            rep.secondary_lower = 2 * k == m ? f / 2 : f / 4;
            rep.secondary_label = 2 * k == m ? "generic k = m/2, m even"
                                             : "generic k > m/2, m even";
        }
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        Design d;
        switch (kind) {
            case DesignKind::MomentCurve: d = moment_curve_design(n, m); break;
            case DesignKind::ExactM3: d = exact_design_m3(n); break;
            case DesignKind::ExactM2: d = exact_design_m2(n); break;
            case DesignKind::Identity: d = identity_design(n); break;
            case DesignKind::User:
                throw InvalidParams("sweep requires a named design kind");
        }
        if (kind == DesignKind::ExactM3 && m != 3)
            throw InvalidParams("exact_m3 sweep requires m = 3");
        if (kind == DesignKind::ExactM2 && m != 2)
            throw InvalidParams("exact_m2 sweep requires m = 2");

        std::optional<Integer> achieved;
        if (!d.cost_rational()) {
            achieved = detail::m3_achieved(d, k, precision_cap);
        } else {
            if (method == SweepMethod::Cells || method == SweepMethod::Both) {
                cells::EnumerationResult er =
                    cells::enumerate_inequality_loadouts(d, k, opts);
                if (er.non_generic) {
                    rep.status = "non_generic";
                    rep.runtime_ms = std::chrono::duration<double, std::milli>(
                                         std::chrono::steady_clock::now() - start)
                                         .count();
                    return rep;
                }
                achieved = Integer(er.loadouts.size());
            }
            if (method == SweepMethod::Oracle || method == SweepMethod::Both) {
                Integer via_oracle = detail::oracle_achieved(d, k, opts.cap);
                if (achieved && *achieved != via_oracle)
                    throw Error("cell enumeration and LP oracle disagree");
                achieved = via_oracle;
            }
        }
        rep.achieved = achieved;
        if (achieved) {
            if (*achieved > rep.upper)
                throw Error("achieved count exceeds the upper bound");
            // the lower bound is over the best design, so only the exact
            // constructions are required to attain it
            const bool exact_construction =
                kind == DesignKind::ExactM2 || kind == DesignKind::ExactM3;
            if (exact_construction && Rational(*achieved) < rep.lower)
                throw Error("exact construction falls below its lower bound");
            rep.tight = (*achieved == rep.upper);
        }
    } catch (const EnumerationTooLarge& e) {
        rep.status = std::string("error: ") + e.what();
    } catch (const IndeterminateSign& e) {
        rep.status = std::string("error: ") + e.what();
    }
    rep.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rep;
}

inline std::vector<BoundReport> sweep(DesignKind kind, const std::vector<int>& n_range,
                                      int m, const std::vector<int>& k_set,
                                      SweepMethod method = SweepMethod::Cells,
                                      const cells::EnumOptions& opts = {},
                                      long precision_cap = kMaxPrecisionBits) {
    std::vector<BoundReport> out;
    for (int n : n_range)
        for (int k : k_set) out.push_back(sweep_row(kind, n, m, k, method, opts, precision_cap));
    return out;
}

}  // namespace loadout::bounds

#endif
