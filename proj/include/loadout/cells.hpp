#ifndef LOADOUT_CELLS_HPP
#define LOADOUT_CELLS_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "loadout/cyclic.hpp"
#include "loadout/design.hpp"
#include "loadout/errors.hpp"
#include "loadout/matrix.hpp"
#include "loadout/simplex.hpp"

// Cell certification for the cost-induced subdivision of cone(A), loadout
// enumeration through simplicial cells, and the hyperplane certificate for
// moment-curve facets.

namespace loadout::cells {

using Subset = std::vector<int>;  // 1-indexed, sorted

enum class CellStatus { Cell, NotACell, NonGeneric };

/// Exact dual certificate: y^T A_j = c_j on the subset, with margins
/// bounding the strict inequalities away from zero.
struct DualCertificate {
    Subset subset;
    Vec<Rational> y;
    Rational strict_margin = 0;                   // min_{j not in C} y^T A_j - c_j
    std::optional<Rational> positivity_margin;    // min_i y_i (inequality cells)
    std::string method = "lp";
};

/// Interval analogue for designs with irrational cost entries: y and the
/// margins are enclosures, with every margin certified strictly positive.
struct IntervalCertificate {
    Subset subset;
    Vec<Interval> y;
    Interval strict_margin{kDefaultPrecisionBits};
    std::optional<Interval> positivity_margin;
    long bits = kDefaultPrecisionBits;
    std::string method = "lp";
};

struct CellResult {
    CellStatus status = CellStatus::NotACell;
    std::optional<DualCertificate> certificate;
    std::optional<IntervalCertificate> interval_certificate;
    /// For NonGeneric: the subset plus every column forced tight by it.
    Subset tight_columns;
};

inline bool is_simplicial(const Design& d, const Subset& C) {
    if (C.empty()) throw InvalidParams("is_simplicial requires a nonempty subset");
    std::vector<std::size_t> idx;
    for (int j : C) {
        if (j < 1 || j > d.n) throw InvalidParams("subset index out of range");
        idx.push_back(static_cast<std::size_t>(j - 1));
    }
    return rank(d.A.select_columns(idx)) == C.size();
}

namespace detail {

/// The strict-feasibility program as an explicit LP over nonnegative
/// variables (y split into positive and negative parts, likewise epsilon):
///   max eps
///   y^T A_j  = c_j        (j in C)
///   y^T A_j - eps >= c_j  (j not in C)
///   y_i - eps >= 0        (inequality mode only)
///   eps <= 1
inline lp::LPInstance strictness_lp(const Design& d, const std::vector<bool>& in_C,
                                    bool inequality_mode) {
    const int m = d.m, n = d.n;
    const std::size_t nv = 2 * m + 2;  // y+, y-, eps+, eps-
    const std::size_t nr = n + 1 + (inequality_mode ? m : 0);
    Matrix<Rational> A(nr, nv, Rational(0));
    Vec<Rational> b(nr, Rational(0));
    std::vector<lp::RowSense> senses(nr);
    Vec<Rational> c = d.cost_exact();

    std::size_t r = 0;
    for (int j = 0; j < n; ++j, ++r) {
        for (int i = 0; i < m; ++i) {
            A(r, i) = d.A(i, j);
            A(r, m + i) = -d.A(i, j);
        }
        if (!in_C[j]) {
            A(r, 2 * m) = -1;
            A(r, 2 * m + 1) = 1;
        }
        b[r] = c[j];
        senses[r] = in_C[j] ? lp::RowSense::Equal : lp::RowSense::GreaterEqual;
    }
    if (inequality_mode) {
        for (int i = 0; i < m; ++i, ++r) {
            A(r, i) = 1;
            A(r, m + i) = -1;
            A(r, 2 * m) = -1;
            A(r, 2 * m + 1) = 1;
            senses[r] = lp::RowSense::GreaterEqual;
        }
    }
    A(r, 2 * m) = 1;
    A(r, 2 * m + 1) = -1;
    b[r] = 1;
    senses[r] = lp::RowSense::LessEqual;

    Vec<Rational> obj(nv, Rational(0));
    obj[2 * m] = 1;
    obj[2 * m + 1] = -1;
    lp::LPInstance inst{std::move(A), std::move(b), std::move(obj), std::move(senses)};
    inst.check();
    return inst;
}

inline Vec<Rational> split_y(const Vec<Rational>& x, int m) {
    Vec<Rational> y(m);
    for (int i = 0; i < m; ++i) y[i] = x[i] - x[m + i];
    return y;
}

/// Columns outside C whose constraint is tight for every feasible y of the
/// epsilon-free system (the certificate of containment in a larger cell).
inline Subset forced_tight(const Design& d, const std::vector<bool>& in_C,
                           bool inequality_mode) {
    const int m = d.m, n = d.n;
    Vec<Rational> c = d.cost_exact();
    // Same rows without the epsilon variables.
    const std::size_t nv = 2 * m;
    const std::size_t nr = n + (inequality_mode ? m : 0);
    Matrix<Rational> A(nr, nv, Rational(0));
    Vec<Rational> b(nr, Rational(0));
    std::vector<lp::RowSense> senses(nr);
    std::size_t r = 0;
    for (int j = 0; j < n; ++j, ++r) {
        for (int i = 0; i < m; ++i) {
            A(r, i) = d.A(i, j);
            A(r, m + i) = -d.A(i, j);
        }
        b[r] = c[j];
        senses[r] = in_C[j] ? lp::RowSense::Equal : lp::RowSense::GreaterEqual;
    }
    if (inequality_mode) {
        for (int i = 0; i < m; ++i, ++r) {
            A(r, i) = 1;
            A(r, m + i) = -1;
            senses[r] = lp::RowSense::GreaterEqual;
        }
    }
    lp::SimplexSolver solver;
    Subset tight;
    for (int j = 0; j < n; ++j) {
        if (in_C[j]) {
            tight.push_back(j + 1);
            continue;
        }
        // The feasible set keeps y^T A_j >= c_j, so the column is forced
        // tight iff the maximum of y^T A_j is exactly c_j.
        Vec<Rational> obj(nv, Rational(0));
        for (int i = 0; i < m; ++i) {
            obj[i] = d.A(i, j);
            obj[m + i] = -d.A(i, j);
        }
        lp::LPInstance inst{A, b, obj, senses};
        lp::Solution s = solver.solve(inst);
        if (s.status == lp::LPStatus::Optimal && s.objective == c[j])
            tight.push_back(j + 1);
    }
    return tight;
}

inline std::vector<bool> membership(const Subset& C, int n) {
    std::vector<bool> in_C(n, false);
    for (int j : C) {
        if (j < 1 || j > n) throw InvalidParams("subset index out of range");
        in_C[j - 1] = true;
    }
    return in_C;
}

/// Interval certification path for |C| = m designs with irrational costs:
/// solve A_C^T y = c_C with exact pivoting and enclosed right-hand side,
/// then certify every margin strictly positive, escalating precision.
inline CellResult interval_certificate(const Design& d, const Subset& C,
                                       bool inequality_mode, long cap_bits) {
    if (static_cast<int>(C.size()) != d.m)
        throw InvalidParams("interval certification requires |C| = m");
    std::vector<std::size_t> idx;
    for (int j : C) idx.push_back(static_cast<std::size_t>(j - 1));
    const Matrix<Rational> At = d.A.select_columns(idx).transpose();
    std::vector<bool> in_C = membership(C, d.n);

    CellResult res;
    for (long bits = kDefaultPrecisionBits; bits <= cap_bits; bits *= 2) {
        Vec<Interval> rhs;
        for (int j : C) rhs.push_back(d.c[j - 1].enclosure(bits));
        Vec<Interval> y = solve_linear(At, rhs, bits);

        std::vector<Interval> margins;
        for (int j = 0; j < d.n; ++j) {
            if (in_C[j]) continue;
            Interval acc = -d.c[j].enclosure(bits);
            for (int i = 0; i < d.m; ++i)
                acc += y[i] * Interval(d.A(i, j), bits);
            margins.push_back(acc);
        }
        std::vector<Interval> pos;
        if (inequality_mode)
            for (int i = 0; i < d.m; ++i) pos.push_back(y[i]);

        bool indeterminate = false;
        for (const auto& group : {margins, pos}) {
            for (const Interval& v : group) {
                SignResult s = v.sign();
                if (s == SignResult::Negative || s == SignResult::Zero) {
                    res.status = CellStatus::NotACell;
                    return res;
                }
                if (s == SignResult::Indeterminate) indeterminate = true;
            }
        }
        if (indeterminate) continue;

        auto min_by_lower = [](const std::vector<Interval>& v) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < v.size(); ++i)
                if (v[i].lower_approx() < v[best].lower_approx()) best = i;
            return v[best];
        };
        res.status = CellStatus::Cell;
        IntervalCertificate cert;
        cert.subset = C;
        cert.y = y;
        cert.strict_margin = margins.empty() ? Interval(Rational(1), bits)
                                             : min_by_lower(margins);
        if (inequality_mode) cert.positivity_margin = min_by_lower(pos);
        cert.bits = bits;
        res.interval_certificate = std::move(cert);
        return res;
    }
    throw IndeterminateSign("cell margins not certifiable at the precision cap");
}

}  // namespace detail

/// Decides whether C is a cell (inequality cell when inequality_mode) by
/// maximizing the strictness slack epsilon. Positive optimum yields a
/// certificate; zero optimum means C sits inside a strictly larger cell
/// (NonGeneric, with the forced-tight column set); otherwise NotACell.
inline CellResult cell_certificate(const Design& d, const Subset& C,
                                   bool inequality_mode = false,
                                   long precision_cap = kMaxPrecisionBits) {
    require_valid(d);
    if (C.empty()) throw InvalidParams("cell_certificate requires a nonempty subset");
    if (!std::is_sorted(C.begin(), C.end()) ||
        std::adjacent_find(C.begin(), C.end()) != C.end())
        throw InvalidParams("subset must be sorted and duplicate-free");
    if (!d.cost_rational())
        return detail::interval_certificate(d, C, inequality_mode, precision_cap);

    std::vector<bool> in_C = detail::membership(C, d.n);
    lp::LPInstance inst = detail::strictness_lp(d, in_C, inequality_mode);
    lp::SimplexSolver solver;
    lp::Solution sol = solver.solve(inst);

    CellResult res;
    if (sol.status == lp::LPStatus::Infeasible) {
        res.status = CellStatus::NotACell;
        return res;
    }
    if (sol.status != lp::LPStatus::Optimal)
        throw Error("strictness program cannot be unbounded (eps <= 1)");
    if (sol.objective < 0) {
        res.status = CellStatus::NotACell;
        return res;
    }
    if (sol.objective == 0) {
        res.status = CellStatus::NonGeneric;
        res.tight_columns = detail::forced_tight(d, in_C, inequality_mode);
        return res;
    }

    res.status = CellStatus::Cell;
    DualCertificate cert;
    cert.subset = C;
    cert.y = detail::split_y(sol.x, d.m);
    Vec<Rational> c = d.cost_exact();
    bool have_margin = false;
    for (int j = 0; j < d.n; ++j) {
        Rational v = 0;
        for (int i = 0; i < d.m; ++i) v += cert.y[i] * d.A(i, j);
        if (in_C[j]) {
            if (v != c[j]) throw Error("certificate violates its own equalities");
        } else {
            Rational margin = v - c[j];
            if (!have_margin || margin < cert.strict_margin) cert.strict_margin = margin;
            have_margin = true;
        }
    }
    if (!have_margin) cert.strict_margin = sol.objective;  // C = [n]: slack is eps itself
    if (inequality_mode) {
        Rational pm = cert.y[0];
        for (int i = 1; i < d.m; ++i) pm = std::min(pm, cert.y[i]);
        cert.positivity_margin = pm;
    }
    res.certificate = std::move(cert);
    return res;
}

/// Def.-style inequality cell test: the cell program plus y_i >= eps.
inline CellResult inequality_cell_certificate(const Design& d, const Subset& C,
                                              long precision_cap = kMaxPrecisionBits) {
    if (static_cast<int>(C.size()) > d.m)
        throw InvalidParams("inequality cells have at most m elements");
    return cell_certificate(d, C, true, precision_cap);
}

enum class FacetCertOutcome { Certified, WrongParity };

struct FacetCertificate {
    FacetCertOutcome outcome = FacetCertOutcome::WrongParity;
    std::optional<DualCertificate> certificate;
    int beta_sign = 0;  // shared sign of beta and every cofactor alpha_i
};

/// Hyperplane certificate for moment-curve designs: the facet hyperplane
/// through the m chosen columns, written as y^T v = 1 with y obtained from
/// signed cofactors of the ones-bordered column matrix. All cofactors must
/// share the sign (-1)^(floor(m/2)+m+1); facets whose gap parity differs
/// from m mod 2 are certified as inequality cells, others get WrongParity.
inline FacetCertificate certificate_from_facet(const Design& d, const Subset& C) {
    if (d.kind != DesignKind::MomentCurve)
        throw InvalidParams("facet certificates require a moment-curve design");
    if (static_cast<int>(C.size()) != d.m)
        throw InvalidParams("facet certificates require an m-subset");
    require_valid(d);
    const int m = d.m, n = d.n;
    std::vector<std::size_t> idx;
    for (int j : C) {
        if (j < 1 || j > n) throw InvalidParams("subset index out of range");
        idx.push_back(static_cast<std::size_t>(j - 1));
    }

    const int expected = ((m / 2 + m + 1) % 2 == 0) ? 1 : -1;
    const Matrix<Rational> Ac = d.A.select_columns(idx);
    const Rational det_pure = det(Ac);
    const Rational beta = (m % 2 == 0) ? Rational(-det_pure) : det_pure;
    if (sign(beta) != expected)
        throw SignLemmaViolation("pure column determinant has the wrong sign");

    // alpha_i = (-1)^(i+m) det(ones row stacked on the rows of A_C other
    // than row i); y = alpha / beta.
    Vec<Rational> y(m);
    for (int i = 1; i <= m; ++i) {
        Matrix<Rational> Mi(m, m, Rational(0));
        for (int j = 0; j < m; ++j) Mi(0, j) = 1;
        int r = 1;
        for (int row = 1; row <= m; ++row) {
            if (row == i) continue;
            for (int j = 0; j < m; ++j) Mi(r, j) = Ac(row - 1, j);
            ++r;
        }
        Rational alpha = det(Mi);
        if ((i + m) % 2 == 1) alpha = -alpha;
        if (sign(alpha) != expected)
            throw SignLemmaViolation("cofactor sign contradicts the hyperplane lemma");
        y[i - 1] = alpha / beta;
    }

    FacetCertificate out;
    out.beta_sign = expected;

    const cyclic::FacetClass fc = cyclic::gap_parity(C, n);
    const bool opposite_parity =
        (fc == cyclic::FacetClass::OddFacet && m % 2 == 0) ||
        (fc == cyclic::FacetClass::EvenFacet && m % 2 == 1);
    if (!opposite_parity) {
        out.outcome = FacetCertOutcome::WrongParity;
        return out;
    }

    Vec<Rational> c = d.cost_exact();
    std::vector<bool> in_C = detail::membership(C, n);
    DualCertificate cert;
    cert.subset = C;
    cert.y = y;
    cert.method = "facet_hyperplane";
    bool have_margin = false;
    for (int j = 0; j < n; ++j) {
        Rational v = 0;
        for (int i = 0; i < m; ++i) v += y[i] * d.A(i, j);
        if (in_C[j]) {
            if (v != c[j]) throw Error("hyperplane certificate misses its own columns");
        } else {
            Rational margin = v - c[j];
            if (margin <= 0)
                throw SignLemmaViolation(
                    "opposite-parity facet fails strict separation");
            if (!have_margin || margin < cert.strict_margin) cert.strict_margin = margin;
            have_margin = true;
        }
    }
    Rational pm = y[0];
    for (int i = 1; i < m; ++i) pm = std::min(pm, y[i]);
    if (pm <= 0) throw SignLemmaViolation("hyperplane certificate not positive");
    cert.positivity_margin = pm;
    out.outcome = FacetCertOutcome::Certified;
    out.certificate = std::move(cert);
    return out;
}

struct EnumOptions {
    long cap = cyclic::kEnumerationCap;
    int jobs = 1;
};

struct EnumerationResult {
    bool non_generic = false;
    Subset witness;                 // offending / forced-tight set when non-generic
    std::vector<Subset> loadouts;   // lexicographically sorted
};

namespace detail {

/// All maximal simplicial cells (size-m cells). Any evidence of a
/// non-simplicial cell flips res.non_generic instead of producing cells.
inline std::vector<Subset> maximal_cells(const Design& d, const EnumOptions& opts,
                                         EnumerationResult& res) {
    std::vector<Subset> candidates;
    cyclic::detail::for_each_subset(d.n, d.m, opts.cap,
                                    [&](const Subset& s) { candidates.push_back(s); });

    std::vector<CellResult> results(candidates.size());
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || candidates.size() < 2) {
        for (std::size_t i = 0; i < candidates.size(); ++i)
            results[i] = cell_certificate(d, candidates[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex err_mutex;
        auto worker = [&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= candidates.size()) return;
                try {
                    results[i] = cell_certificate(d, candidates[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    std::vector<Subset> cells;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const CellResult& r = results[i];
        if (r.status == CellStatus::NonGeneric) {
            res.non_generic = true;
            res.witness = r.tight_columns;
            return {};
        }
        if (r.status != CellStatus::Cell) continue;
        if (!is_simplicial(d, candidates[i])) {
            res.non_generic = true;
            res.witness = candidates[i];
            return {};
        }
        cells.push_back(candidates[i]);
    }
    return cells;
}

inline std::vector<Subset> k_subsets_of(const Subset& base, int k) {
    std::vector<Subset> out;
    const int sz = static_cast<int>(base.size());
    if (k > sz) return out;
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        Subset s(k);
        for (int i = 0; i < k; ++i) s[i] = base[pick[i]];
        out.push_back(std::move(s));
        int i = k - 1;
        while (i >= 0 && pick[i] == sz - (k - i)) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

}  // namespace detail

/// All size-k equality loadouts: the simplicial cells of size k. In a
/// triangulation every cell is a face of a maximal simplicial cell, so the
/// answer is the set of k-subsets of the maximal cells. Any non-simplicial
/// cell makes the enumeration NonGeneric (unresolved) instead.
inline EnumerationResult enumerate_equality_loadouts(const Design& d, int k,
                                                     const EnumOptions& opts = {}) {
    require_valid(d);
    if (!d.cost_rational())
        throw InvalidParams("loadout enumeration requires rational costs");
    if (!(1 <= k && k <= d.m))
        throw InvalidParams("enumeration requires 1 <= k <= m");

    EnumerationResult res;
    std::vector<Subset> maximal = detail::maximal_cells(d, opts, res);
    if (res.non_generic) return res;

    std::set<Subset> out;
    for (const Subset& cell : maximal)
        for (Subset& s : detail::k_subsets_of(cell, k)) out.insert(std::move(s));
    res.loadouts.assign(out.begin(), out.end());
    return res;
}

/// Size-k (inequality) loadouts via slack augmentation: the equality
/// loadouts of ([A | I_m], (c, 0)) restricted to the original columns.
/// Every candidate is re-confirmed by the LP oracle before inclusion.
inline EnumerationResult enumerate_inequality_loadouts(const Design& d, int k,
                                                       const EnumOptions& opts = {}) {
    require_valid(d);
    if (!d.cost_rational())
        throw InvalidParams("loadout enumeration requires rational costs");
    if (!(1 <= k && k <= d.m))
        throw InvalidParams("enumeration requires 1 <= k <= m");

    Design aug;
    aug.m = d.m;
    aug.n = d.n + d.m;
    aug.kind = DesignKind::User;
    aug.A = Matrix<Rational>(d.m, d.n + d.m, Rational(0));
    for (int i = 0; i < d.m; ++i) {
        for (int j = 0; j < d.n; ++j) aug.A(i, j) = d.A(i, j);
        aug.A(i, d.n + i) = 1;
    }
    aug.c = d.c;
    aug.c.resize(d.n + d.m, CostEntry{Rational(0), false});

    EnumerationResult res;
    std::vector<Subset> maximal = detail::maximal_cells(aug, opts, res);
    if (res.non_generic) return res;

    std::set<Subset> out;
    for (const Subset& cell : maximal) {
        Subset original;
        for (int j : cell)
            if (j <= d.n) original.push_back(j);
        for (Subset& s : detail::k_subsets_of(original, k)) out.insert(std::move(s));
    }
    for (const Subset& s : out) {
        lp::VerifyResult v = lp::verify_loadout(d, s);
        if (!v.confirmed)
            throw Error("enumerated loadout refuted by the LP oracle: " + v.note);
    }
    res.loadouts.assign(out.begin(), out.end());
    return res;
}

}  // namespace loadout::cells

#endif
