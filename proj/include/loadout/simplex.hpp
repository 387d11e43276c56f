#ifndef LOADOUT_SIMPLEX_HPP
#define LOADOUT_SIMPLEX_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "loadout/design.hpp"
#include "loadout/errors.hpp"
#include "loadout/matrix.hpp"

// Exact rational primal simplex (Bland's rule, two-phase), optimal-face
// uniqueness testing, and the loadout verification oracle.

namespace loadout::lp {

enum class RowSense { LessEqual, Equal, GreaterEqual };
enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPInstance {
    Matrix<Rational> A;
    Vec<Rational> b;
    Vec<Rational> c;
    std::vector<RowSense> rows;

    static LPInstance make(Matrix<Rational> A, Vec<Rational> b, Vec<Rational> c,
                           RowSense sense) {
        LPInstance inst{std::move(A), std::move(b), std::move(c), {}};
        inst.rows.assign(inst.A.rows(), sense);
        inst.check();
        return inst;
    }

    static LPInstance inequality(Matrix<Rational> A, Vec<Rational> b, Vec<Rational> c) {
        return make(std::move(A), std::move(b), std::move(c), RowSense::LessEqual);
    }
    static LPInstance equality(Matrix<Rational> A, Vec<Rational> b, Vec<Rational> c) {
        return make(std::move(A), std::move(b), std::move(c), RowSense::Equal);
    }

    void check() const {
        if (b.size() != A.rows() || c.size() != A.cols() || rows.size() != A.rows())
            throw DimensionMismatch("inconsistent LP instance dimensions");
    }
};

struct Solution {
    LPStatus status = LPStatus::Infeasible;
    Vec<Rational> x;
    Rational objective = 0;
    std::vector<int> basis;  // 1-indexed original columns in the final basis
    Vec<Rational> dual;      // y, one entry per row, original orientation

    std::vector<int> support() const {
        std::vector<int> s;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0) s.push_back(static_cast<int>(j) + 1);
        return s;
    }
};

inline constexpr long kDefaultIterationCap = 200'000;

/// max c^T x s.t. rows of Ax {<=,=,>=} b, x >= 0. Exact throughout; the
/// iteration cap is a hard failure, never a silent approximation.
class SimplexSolver {
public:
    explicit SimplexSolver(long iteration_cap = kDefaultIterationCap)
        : iteration_cap_(iteration_cap) {}

    Solution solve(const LPInstance& inst) const {
        inst.check();
        const std::size_t m = inst.A.rows(), n = inst.A.cols();

        // Standard equality form: slack/surplus per inequality row, rows
        // scaled so the right-hand side is nonnegative (scale kept for dual
        // recovery), one artificial per row.
        std::size_t n_slack = 0;
        for (RowSense s : inst.rows)
            if (s != RowSense::Equal) ++n_slack;
        const std::size_t n_struct = n + n_slack;
        const std::size_t n_total = n_struct + m;

        std::vector<int> scale(m, 1);
        Matrix<Rational> T(m, n_total + 1, Rational(0));  // last column = rhs
        std::vector<Rational> obj2(n_total, Rational(0));
        for (std::size_t j = 0; j < n; ++j) obj2[j] = inst.c[j];

        std::size_t slack_at = n;
        for (std::size_t i = 0; i < m; ++i) {
            if (inst.b[i] < 0) scale[i] = -1;
            for (std::size_t j = 0; j < n; ++j) T(i, j) = scale[i] * inst.A(i, j);
            if (inst.rows[i] != RowSense::Equal) {
                const int coef = inst.rows[i] == RowSense::LessEqual ? 1 : -1;
                T(i, slack_at++) = scale[i] * coef;
            }
            T(i, n_struct + i) = 1;  // artificial
            T(i, n_total) = scale[i] * inst.b[i];
        }

        std::vector<std::size_t> basis(m);
        for (std::size_t i = 0; i < m; ++i) basis[i] = n_struct + i;

        long iters = 0;

        // Phase 1: maximize -(sum of artificials).
        std::vector<Rational> obj1(n_total, Rational(0));
        for (std::size_t i = 0; i < m; ++i) obj1[n_struct + i] = -1;
        run_phase(T, basis, obj1, n_total, iters);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= n_struct && T(i, n_total) != 0)
                return Solution{LPStatus::Infeasible, {}, 0, {}, {}};

        // Drive remaining artificials out of the basis where possible;
        // rows that stay artificial-basic are redundant and inert.
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n_struct) continue;
            for (std::size_t j = 0; j < n_struct; ++j) {
                if (T(i, j) != 0) {
                    pivot(T, basis, i, j, n_total);
                    break;
                }
            }
        }

        // Phase 2: artificial columns are barred from entering.
        if (!run_phase(T, basis, obj2, n_struct, iters))
            return Solution{LPStatus::Unbounded, {}, 0, {}, {}};

        Solution sol;
        sol.status = LPStatus::Optimal;
        sol.x.assign(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) sol.x[basis[i]] = T(i, n_total);
        sol.objective = dot(sol.x, inst.c);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) sol.basis.push_back(static_cast<int>(basis[i]) + 1);
        std::sort(sol.basis.begin(), sol.basis.end());
        sol.dual = recover_dual(inst, scale, basis, obj2, n, n_slack);
        return sol;
    }

private:
    static void pivot(Matrix<Rational>& T, std::vector<std::size_t>& basis,
                      std::size_t row, std::size_t col, std::size_t n_total) {
        const Rational piv = T(row, col);
        for (std::size_t j = 0; j <= n_total; ++j) T(row, j) /= piv;
        for (std::size_t i = 0; i < T.rows(); ++i) {
            if (i == row || T(i, col) == 0) continue;
            const Rational f = T(i, col);
            for (std::size_t j = 0; j <= n_total; ++j) T(i, j) -= f * T(row, j);
        }
        basis[row] = col;
    }

    /// Bland's rule iteration until optimal (true) or unbounded (false).
    /// Columns with index >= allowed_cols never enter.
    bool run_phase(Matrix<Rational>& T, std::vector<std::size_t>& basis,
                   const std::vector<Rational>& obj, std::size_t allowed_cols,
                   long& iters) const {
        const std::size_t m = T.rows();
        const std::size_t n_total = T.cols() - 1;
        while (true) {
            if (++iters > iteration_cap_)
                throw IterationLimit("simplex iteration cap exceeded");
            // Entering: lowest index with positive reduced cost.
            std::size_t enter = n_total;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                Rational reduced = obj[j];
                for (std::size_t i = 0; i < m; ++i)
                    if (obj[basis[i]] != 0) reduced -= obj[basis[i]] * T(i, j);
                if (reduced > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_total) return true;
            // Leaving: minimum ratio, ties broken by lowest basis index.
            std::size_t leave = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (T(i, enter) <= 0) continue;
                Rational ratio = T(i, n_total) / T(i, enter);
                if (leave == m || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return false;
            pivot(T, basis, leave, enter, n_total);
        }
    }

    /// y from B^T y = c_B over the scaled standard matrix, mapped back to the
    /// original row orientation.
    static Vec<Rational> recover_dual(const LPInstance& inst, const std::vector<int>& scale,
                                      const std::vector<std::size_t>& basis,
                                      const std::vector<Rational>& obj2, std::size_t n,
                                      std::size_t n_slack) {
        const std::size_t m = inst.A.rows();
        // Rebuild the scaled standard-form columns for the basis.
        Matrix<Rational> B(m, m, Rational(0));
        Vec<Rational> cb(m, Rational(0));
        for (std::size_t p = 0; p < m; ++p) {
            const std::size_t col = basis[p];
            cb[p] = col < obj2.size() ? obj2[col] : Rational(0);
            if (col < n) {
                for (std::size_t i = 0; i < m; ++i) B(i, p) = scale[i] * inst.A(i, col);
            } else if (col < n + n_slack) {
                // locate which row this slack belongs to
                std::size_t s = n;
                for (std::size_t i = 0; i < m; ++i) {
                    if (inst.rows[i] == RowSense::Equal) continue;
                    if (s == col) {
                        B(i, p) = scale[i] *
                                  (inst.rows[i] == RowSense::LessEqual ? 1 : -1);
                        break;
                    }
                    ++s;
                }
            } else {
                B(col - (n + n_slack), p) = 1;  // artificial basic in redundant row
            }
        }
        Vec<Rational> y_std = solve_linear(B.transpose(), cb);
        Vec<Rational> y(m);
        for (std::size_t i = 0; i < m; ++i) y[i] = scale[i] * y_std[i];
        return y;
    }

    long iteration_cap_;
};

struct UniquenessReport {
    bool unique = true;
    std::optional<Vec<Rational>> witness;  // alternative optimum when not unique
    std::vector<int> support;              // 1-indexed support of the optimum
};

/// Uniqueness of the optimal solution via coordinate extremes over the
/// optimal face: maximize and minimize each x_j subject to feasibility and
/// c^T x = optimal value; unique iff every coordinate is pinned.
inline UniquenessReport optimal_face_unique(const LPInstance& inst, const Solution& sol,
                                            long iteration_cap = kDefaultIterationCap) {
    if (sol.status != LPStatus::Optimal)
        throw InvalidParams("uniqueness test requires an optimal solution");
    const std::size_t m = inst.A.rows(), n = inst.A.cols();
    LPInstance face = inst;
    Matrix<Rational> A2(m + 1, n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) A2(i, j) = inst.A(i, j);
    for (std::size_t j = 0; j < n; ++j) A2(m, j) = inst.c[j];
    face.A = std::move(A2);
    face.b.push_back(sol.objective);
    face.rows.push_back(RowSense::Equal);

    SimplexSolver solver(iteration_cap);
    UniquenessReport rep;
    rep.support = sol.support();
    for (std::size_t j = 0; j < n; ++j) {
        for (int dir : {1, -1}) {
            face.c.assign(n, Rational(0));
            face.c[j] = dir;
            Solution s = solver.solve(face);
            if (s.status != LPStatus::Optimal)
                throw Error("optimal-face coordinate LP failed to solve");
            if (s.x[j] != sol.x[j]) {
                rep.unique = false;
                rep.witness = s.x;
                return rep;
            }
        }
    }
    return rep;
}

struct VerifyResult {
    bool confirmed = false;
    Solution solution;
    Vec<Rational> b;                        // the tested resource vector
    std::vector<int> actual_support;        // on refutation: the optimal support
    std::optional<Vec<Rational>> witness;   // on refutation: non-uniqueness witness
    std::string note;
};

/// LP oracle for loadout status: pick x with support L (indicator by
/// default), set b = Ax, and check that x is the unique optimum of
/// LP(A, c, b). A refutation applies only to the tested b; a different
/// witness x may still succeed.
inline VerifyResult verify_loadout(const Design& d, const std::vector<int>& L,
                                   std::optional<Vec<Rational>> x_witness = std::nullopt,
                                   long iteration_cap = kDefaultIterationCap) {
    require_valid(d);
    if (L.empty()) throw InvalidParams("loadout subset must be nonempty");
    if (!d.cost_rational())
        throw InvalidParams("the LP oracle accepts rational designs only");
    const std::size_t n = d.A.cols();

    Vec<Rational> x(n, Rational(0));
    if (x_witness) {
        x = *x_witness;
        if (x.size() != n) throw DimensionMismatch("witness size mismatch");
        std::vector<int> supp;
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] != 0) supp.push_back(static_cast<int>(j) + 1);
        if (supp != L) throw InvalidParams("witness support differs from subset");
    } else {
        for (int j : L) x[j - 1] = 1;
    }

    VerifyResult res;
    res.b = mat_vec(d.A, x);
    LPInstance inst = LPInstance::inequality(d.A, res.b, d.cost_exact());
    SimplexSolver solver(iteration_cap);
    res.solution = solver.solve(inst);
    if (res.solution.status != LPStatus::Optimal) {
        res.note = "LP not optimal for tested b";
        return res;
    }
    UniquenessReport uniq = optimal_face_unique(inst, res.solution, iteration_cap);
    if (!uniq.unique) {
        res.witness = uniq.witness;
        res.actual_support = res.solution.support();
        res.note = "optimum not unique for tested b";
        return res;
    }
    res.actual_support = res.solution.support();
    if (res.actual_support == L) {
        res.confirmed = true;
    } else {
        res.note = "unique optimum has a different support for tested b";
    }
    return res;
}

}  // namespace loadout::lp

#endif
