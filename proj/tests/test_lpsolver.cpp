#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"

using namespace loadout;
using lp::LPInstance;
using lp::LPStatus;
using lp::SimplexSolver;
using testutil::random_rational;

namespace {

LPInstance from_design(const Design& d, Vec<Rational> b) {
    return LPInstance::inequality(d.A, std::move(b), d.cost_exact());
}

/// Exact optimality conditions for max{c^T x | Ax <= b, x >= 0}:
/// primal feasibility, dual feasibility, zero gap, complementary slackness.
void check_kkt(const LPInstance& inst, const lp::Solution& sol) {
    REQUIRE(sol.status == LPStatus::Optimal);
    Vec<Rational> Ax = mat_vec(inst.A, sol.x);
    Rational dual_obj(0);
    for (std::size_t i = 0; i < inst.A.rows(); ++i) {
        if (inst.rows[i] == lp::RowSense::LessEqual) {
            REQUIRE(Ax[i] <= inst.b[i]);
            REQUIRE(sol.dual[i] >= 0);
        } else if (inst.rows[i] == lp::RowSense::GreaterEqual) {
            REQUIRE(Ax[i] >= inst.b[i]);
            REQUIRE(sol.dual[i] <= 0);
        } else {
            REQUIRE(Ax[i] == inst.b[i]);
        }
        REQUIRE(sol.dual[i] * (Ax[i] - inst.b[i]) == 0);
        dual_obj += sol.dual[i] * inst.b[i];
    }
    for (std::size_t j = 0; j < inst.A.cols(); ++j) {
        REQUIRE(sol.x[j] >= 0);
        Rational reduced = inst.c[j];
        for (std::size_t i = 0; i < inst.A.rows(); ++i)
            reduced -= sol.dual[i] * inst.A(i, j);
        REQUIRE(reduced <= 0);
        REQUIRE(reduced * sol.x[j] == 0);
    }
    REQUIRE(dual_obj == sol.objective);  // strong duality, exactly
}

}  // namespace

TEST_CASE("solver reference examples") {
    SimplexSolver solver;

    auto s1 = solver.solve(from_design(identity_design(2), {Rational(1), Rational(0)}));
    CHECK(s1.x == Vec<Rational>{Rational(1), Rational(0)});
    CHECK(s1.objective == 1);

    auto s2 = solver.solve(from_design(exact_design_m2(4), {Rational(13), Rational(2)}));
    CHECK(s2.x == Vec<Rational>{Rational(0), Rational(1), Rational(1), Rational(0)});
    CHECK(s2.objective == 5);
    check_kkt(from_design(exact_design_m2(4), {Rational(13), Rational(2)}), s2);

    Matrix<Rational> one(1, 1, Rational(1));
    auto s3 = solver.solve(LPInstance::inequality(one, {Rational(-1)}, {Rational(1)}));
    CHECK(s3.status == LPStatus::Infeasible);

    Matrix<Rational> zero(1, 1, Rational(0));
    auto s4 = solver.solve(LPInstance::inequality(zero, {Rational(1)}, {Rational(1)}));
    CHECK(s4.status == LPStatus::Unbounded);
}

TEST_CASE("objective matches brute-force basic-solution enumeration") {
    std::mt19937 rng(20240818);
    SimplexSolver solver;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = 1 + trial % 3, n = 2 + trial % 5;
        Matrix<Rational> A(m, n, Rational(0));
        for (std::size_t j = 0; j < n; ++j) {
            bool has_positive = false;
            for (std::size_t i = 0; i < m; ++i) {
                A(i, j) = random_rational(rng, 0, 5, 3);
                has_positive |= A(i, j) > 0;
            }
            if (!has_positive) A(0, j) = 1;  // keep the LP bounded
        }
        Vec<Rational> b(m), c(n);
        for (auto& v : b) v = random_rational(rng, 0, 8, 3);
        for (auto& v : c) v = random_rational(rng, -3, 6, 3);
        LPInstance inst = LPInstance::inequality(A, b, c);
        lp::Solution sol = solver.solve(inst);
        REQUIRE(sol.status == LPStatus::Optimal);
        auto best = testutil::brute_force_best(A, b, c);
        REQUIRE(best.has_value());
        CHECK(sol.objective == *best);
        check_kkt(inst, sol);
    }
}

TEST_CASE("equality-sense instances solve with exact duality") {
    std::mt19937 rng(555);
    SimplexSolver solver;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 1 + trial % 2, n = m + 1 + trial % 3;
        Matrix<Rational> A(m, n, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = random_rational(rng, 0, 4, 2);
        // feasible by construction: b = A x0 with x0 >= 0
        Vec<Rational> x0(n), c(n);
        for (auto& v : x0) v = random_rational(rng, 0, 3, 2);
        for (auto& v : c) v = random_rational(rng, -2, 4, 2);
        Vec<Rational> b = mat_vec(A, x0);
        LPInstance inst = LPInstance::equality(A, b, c);
        lp::Solution sol = solver.solve(inst);
        if (sol.status == LPStatus::Unbounded) continue;
        REQUIRE(sol.status == LPStatus::Optimal);
        CHECK(sol.objective >= dot(x0, c));
        CHECK(mat_vec(A, sol.x) == b);
        Rational dual_obj(0);
        for (std::size_t i = 0; i < m; ++i) dual_obj += sol.dual[i] * b[i];
        CHECK(dual_obj == sol.objective);
    }
}

TEST_CASE("optimal-face uniqueness") {
    SimplexSolver solver;

    LPInstance pinned = from_design(identity_design(2), {Rational(1), Rational(1)});
    auto rep1 = lp::optimal_face_unique(pinned, solver.solve(pinned));
    CHECK(rep1.unique);
    CHECK(rep1.support == std::vector<int>{1, 2});

    Matrix<Rational> tie(1, 2, Rational(1));
    LPInstance tied = LPInstance::inequality(tie, {Rational(1)}, {Rational(1), Rational(1)});
    lp::Solution tsol = solver.solve(tied);
    auto rep2 = lp::optimal_face_unique(tied, tsol);
    CHECK_FALSE(rep2.unique);
    REQUIRE(rep2.witness.has_value());
    CHECK(dot(*rep2.witness, tied.c) == tsol.objective);
    CHECK(*rep2.witness != tsol.x);

    LPInstance m2 = from_design(exact_design_m2(4), {Rational(13), Rational(2)});
    auto rep3 = lp::optimal_face_unique(m2, solver.solve(m2));
    CHECK(rep3.unique);
    CHECK(rep3.support == std::vector<int>{2, 3});
}

TEST_CASE("loadout verification oracle") {
    auto v1 = lp::verify_loadout(exact_design_m2(4), {2, 3});
    CHECK(v1.confirmed);
    CHECK(v1.b == Vec<Rational>{Rational(13), Rational(2)});

    auto v2 = lp::verify_loadout(moment_curve_design(6, 4), {1, 2, 3, 6});
    CHECK(v2.confirmed);

    auto v3 = lp::verify_loadout(identity_design(2), {1, 2},
                                 Vec<Rational>{Rational(1), Rational(1)});
    CHECK(v3.confirmed);
    CHECK(v3.b == Vec<Rational>{Rational(1), Rational(1)});

    auto v4 = lp::verify_loadout(exact_design_m2(4), {1, 3});
    CHECK_FALSE(v4.confirmed);
    CHECK_FALSE(v4.note.empty());

    CHECK_THROWS_AS(lp::verify_loadout(exact_design_m2(4), {1, 2},
                                       Vec<Rational>{Rational(1), Rational(0), Rational(0),
                                                     Rational(0)}),
                    InvalidParams);
    CHECK_THROWS_AS(lp::verify_loadout(exact_design_m3(5), {1, 2}), InvalidParams);
}

TEST_CASE("iteration cap is a hard failure") {
    SimplexSolver strangled(1);
    CHECK_THROWS_AS(
        strangled.solve(from_design(exact_design_m2(4), {Rational(13), Rational(2)})),
        IterationLimit);
}

TEST_CASE("dimension validation") {
    Matrix<Rational> A(2, 2, Rational(1));
    CHECK_THROWS_AS(LPInstance::inequality(A, {Rational(1)}, {Rational(1), Rational(1)}),
                    DimensionMismatch);
}
