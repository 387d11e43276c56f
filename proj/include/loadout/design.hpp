#ifndef LOADOUT_DESIGN_HPP
#define LOADOUT_DESIGN_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loadout/errors.hpp"
#include "loadout/interval.hpp"
#include "loadout/matrix.hpp"

namespace loadout {

enum class DesignKind { MomentCurve, ExactM3, ExactM2, Identity, User };

inline std::string kind_name(DesignKind k) {
    switch (k) {
        case DesignKind::MomentCurve: return "moment_curve";
        case DesignKind::ExactM3: return "exact_m3";
        case DesignKind::ExactM2: return "exact_m2";
        case DesignKind::Identity: return "identity";
        case DesignKind::User: return "user";
    }
    throw Error("unreachable design kind");
}

inline DesignKind kind_from_name(const std::string& s) {
    if (s == "moment_curve" || s == "moment") return DesignKind::MomentCurve;
    if (s == "exact_m3") return DesignKind::ExactM3;
    if (s == "exact_m2") return DesignKind::ExactM2;
    if (s == "identity") return DesignKind::Identity;
    if (s == "user") return DesignKind::User;
    throw InvalidParams("unknown design kind '" + s + "'");
}

/// One cost entry: value (if !is_sqrt) or sqrt(value). The sqrt form keeps
/// irrational costs re-evaluable at any interval precision.
struct CostEntry {
    Rational value;
    bool is_sqrt = false;

    bool rational() const { return !is_sqrt; }
    Interval enclosure(long bits) const {
        return is_sqrt ? Interval::sqrt(value, bits) : Interval(value, bits);
    }
};

/// A game design (A, c): nonnegative m x n constraint matrix plus length-n
/// cost vector. A is always exactly rational; cost entries may be square
/// roots of rationals (carried as enclosures downstream).
struct Design {
    int m = 0;
    int n = 0;
    DesignKind kind = DesignKind::User;
    Matrix<Rational> A;
    std::vector<CostEntry> c;
    std::map<std::string, std::string> params;

    bool cost_rational() const {
        for (const auto& e : c)
            if (!e.rational()) return false;
        return true;
    }

    /// Exact cost vector; only valid when every entry is rational.
    Vec<Rational> cost_exact() const {
        Vec<Rational> out;
        out.reserve(c.size());
        for (const auto& e : c) {
            if (!e.rational())
                throw InvalidParams("design has irrational cost entries");
            out.push_back(e.value);
        }
        return out;
    }

    Vec<Interval> cost_enclosure(long bits) const {
        Vec<Interval> out;
        out.reserve(c.size());
        for (const auto& e : c) out.push_back(e.enclosure(bits));
        return out;
    }
};

/// Moment-curve design: c = (1,...,1) and column j = v'_m(t_j), where row i
/// holds t^i for odd i and M - t^i for even i. Defaults t_j = j and
/// M = t_n^m + 1.
inline Design moment_curve_design(int n, int m,
                                  std::optional<std::vector<Rational>> t_opt = std::nullopt,
                                  std::optional<Rational> M_opt = std::nullopt) {
    if (!(n > m && m >= 2)) throw InvalidParams("moment_curve_design requires n > m >= 2");
    std::vector<Rational> t;
    if (t_opt) {
        t = *t_opt;
        if (static_cast<int>(t.size()) != n)
            throw InvalidParams("expected " + std::to_string(n) + " t-values");
        if (t[0] <= 0) throw InvalidParams("t-values must be positive");
        for (int j = 1; j < n; ++j)
            if (t[j] <= t[j - 1]) throw InvalidParams("t-values must be strictly increasing");
    } else {
        for (int j = 1; j <= n; ++j) t.emplace_back(j);
    }
    const Rational tn_pow = pow_rat(t.back(), static_cast<unsigned long>(m));
    Rational M = M_opt ? *M_opt : Rational(tn_pow + 1);
    if (M < tn_pow) throw InvalidParams("M must satisfy M >= t_n^m");

    Design d;
    d.m = m;
    d.n = n;
    d.kind = DesignKind::MomentCurve;
    d.A = Matrix<Rational>(m, n, Rational(0));
    for (int j = 0; j < n; ++j) {
        for (int i = 1; i <= m; ++i) {
            Rational p = pow_rat(t[j], static_cast<unsigned long>(i));
            d.A(i - 1, j) = (i % 2 == 1) ? p : Rational(M - p);
        }
    }
    d.c.assign(n, CostEntry{Rational(1), false});
    d.params["M"] = to_string(M);
    std::string ts;
    for (int j = 0; j < n; ++j) ts += (j ? "," : "") + to_string(t[j]);
    d.params["t"] = ts;
    return d;
}

/// Tight m = 3 design: c = (1, 1, sqrt(2/3), ..., sqrt(2/n)); A rows
/// (1, 0, 1/3, ..., 1/n), (0, 1, 1/3, ..., 1/n), (1, ..., 1).
inline Design exact_design_m3(int n) {
    if (n <= 3) throw InvalidParams("exact_design_m3 requires n > 3");
    Design d;
    d.m = 3;
    d.n = n;
    d.kind = DesignKind::ExactM3;
    d.A = Matrix<Rational>(3, n, Rational(0));
    d.A(0, 0) = 1;
    d.A(1, 1) = 1;
    for (int j = 3; j <= n; ++j) {
        d.A(0, j - 1) = make_rational(1, j);
        d.A(1, j - 1) = make_rational(1, j);
    }
    for (int j = 1; j <= n; ++j) d.A(2, j - 1) = 1;
    d.c.assign(n, CostEntry{Rational(1), false});
    for (int j = 3; j <= n; ++j) d.c[j - 1] = CostEntry{make_rational(2, j), true};
    return d;
}

/// Tight m = 2 design: c = (1, 2, ..., n); A = [[1^2, ..., n^2], [1, ..., 1]].
inline Design exact_design_m2(int n) {
    if (n <= 2) throw InvalidParams("exact_design_m2 requires n > 2");
    Design d;
    d.m = 2;
    d.n = n;
    d.kind = DesignKind::ExactM2;
    d.A = Matrix<Rational>(2, n, Rational(0));
    for (int j = 1; j <= n; ++j) {
        d.A(0, j - 1) = Rational(j) * Rational(j);
        d.A(1, j - 1) = 1;
        d.c.push_back(CostEntry{Rational(j), false});
    }
    return d;
}

/// A = I_n, c = (1,...,1): every subset of every size is a loadout.
inline Design identity_design(int n) {
    if (n < 1) throw InvalidParams("identity_design requires n >= 1");
    Design d;
    d.m = n;
    d.n = n;
    d.kind = DesignKind::Identity;
    d.A = Matrix<Rational>::identity(n);
    d.c.assign(n, CostEntry{Rational(1), false});
    return d;
}

struct ValidationReport {
    bool nonnegative = true;
    bool full_row_rank = true;
    bool rank_certified = true;  // false when interval rank could not be decided
    bool columns_distinct = true;
    bool ok() const { return nonnegative && full_row_rank && columns_distinct; }
};

inline ValidationReport validate(const Design& d) {
    ValidationReport r;
    for (int i = 0; i < d.m; ++i)
        for (int j = 0; j < d.n; ++j)
            if (d.A(i, j) < 0) r.nonnegative = false;
    for (const auto& e : d.c)
        if (e.value < 0) r.nonnegative = false;
    r.full_row_rank = rank(d.A) == static_cast<std::size_t>(d.m);
    for (int j = 0; j < d.n && r.columns_distinct; ++j)
        for (int l = j + 1; l < d.n; ++l)
            if (d.A.column(j) == d.A.column(l) && d.c[j].value == d.c[l].value &&
                d.c[j].is_sqrt == d.c[l].is_sqrt) {
                r.columns_distinct = false;
                break;
            }
    return r;
}

/// Enforced before any loadout enumeration: full row rank is load-bearing
/// for the uniqueness arguments.
inline void require_valid(const Design& d) {
    ValidationReport r = validate(d);
    if (!r.nonnegative) throw InvalidParams("design has negative entries");
    if (!r.full_row_rank) throw InvalidParams("design matrix is not of full row rank");
}

/// c' = c + delta * (1,...,1). Perturbed counts answer a different question,
/// so this is only ever applied on explicit request.
inline Design perturb_costs(const Design& d, const Rational& delta) {
    if (!d.cost_rational())
        throw InvalidParams("perturbation requires rational costs");
    Design out = d;
    out.kind = DesignKind::User;
    for (auto& e : out.c) e.value += delta;
    out.params["perturb"] = to_string(delta);
    return out;
}

}  // namespace loadout

#endif
