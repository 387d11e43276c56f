#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"

using namespace loadout;
using testutil::permutation_det;
using testutil::random_rational;

TEST_CASE("rational string round trips") {
    CHECK(to_string(make_rational(3, 4)) == "3/4");
    CHECK(to_string(make_rational(-6, 8)) == "-3/4");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(parse_rational("22/7") == make_rational(22, 7));
    CHECK(parse_rational("-9") == Rational(-9));
    CHECK(parse_rational(to_string(make_rational(355, -113))) ==
          make_rational(-355, 113));
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(make_rational(1, 0), InvalidParams);
}

TEST_CASE("sign and powers") {
    CHECK(sign(make_rational(-7, 3)) == -1);
    CHECK(sign(Rational(0)) == 0);
    CHECK(sign(make_rational(1, 9)) == 1);
    CHECK(pow_rat(make_rational(2, 3), 3) == make_rational(8, 27));
    CHECK(pow_int(Integer(7), 0) == 1);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(4, 7) == 0);
    CHECK(binomial(-1, 0) == 0);
}

TEST_CASE("determinant matches permutation expansion on random matrices") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 4;
        Matrix<Rational> m(n, n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng);
        CHECK(det(m) == permutation_det(m));
    }
}

TEST_CASE("determinant basics") {
    CHECK(det(Matrix<Rational>::identity(4)) == 1);
    Matrix<Rational> singular(2, 2, Rational(1));
    CHECK(det(singular) == 0);
    Matrix<Rational> rect(2, 3, Rational(0));
    CHECK_THROWS_AS(det(rect), DimensionMismatch);
    CHECK_THROWS_AS(det(Matrix<Rational>::identity(17)), InvalidParams);
}

TEST_CASE("solve_linear examples") {
    CHECK(solve_linear(Matrix<Rational>::identity(2), {Rational(3), Rational(5)}) ==
          Vec<Rational>{Rational(3), Rational(5)});
    Matrix<Rational> lower(2, 2, Rational(0));
    lower(0, 0) = 1;
    lower(1, 0) = 1;
    lower(1, 1) = 1;
    CHECK(solve_linear(lower, {Rational(1), Rational(2)}) ==
          Vec<Rational>{Rational(1), Rational(1)});
    Matrix<Rational> dep(2, 2, Rational(0));
    dep(0, 0) = 1;
    dep(0, 1) = 1;
    dep(1, 0) = 2;
    dep(1, 1) = 2;
    CHECK_THROWS_AS(solve_linear(dep, {Rational(1), Rational(2)}), SingularMatrix);
}

TEST_CASE("solve_linear reproduces the right-hand side on random systems") {
    std::mt19937 rng(99);
    int solved = 0;
    while (solved < 50) {
        const std::size_t n = 2 + solved % 3;
        Matrix<Rational> m(n, n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng);
        Vec<Rational> b(n);
        for (auto& v : b) v = random_rational(rng);
        try {
            Vec<Rational> x = solve_linear(m, b);
            CHECK(mat_vec(m, x) == b);
            ++solved;
        } catch (const SingularMatrix&) {
        }
    }
}

TEST_CASE("rank") {
    CHECK(rank(Matrix<Rational>::identity(3)) == 3);
    Matrix<Rational> flat(2, 2, Rational(1));
    CHECK(rank(flat) == 1);
    Matrix<Rational> zero(3, 4, Rational(0));
    CHECK(rank(zero) == 0);
}

TEST_CASE("intervals enclose exact rational arithmetic") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Rational a = random_rational(rng), b = random_rational(rng);
        Interval ia(a, 64), ib(b, 64);
        CHECK((ia + ib).contains(a + b));
        CHECK((ia - ib).contains(a - b));
        CHECK((ia * ib).contains(a * b));
        if (b != 0) CHECK((ia / ib).contains(a / b));
    }
    CHECK(Interval(make_rational(1, 3), 32).contains(make_rational(1, 3)));
}

TEST_CASE("interval sign and sqrt") {
    CHECK(Interval(Rational(2), 64).sign() == SignResult::Positive);
    CHECK(Interval(Rational(-2), 64).sign() == SignResult::Negative);
    CHECK(Interval(Rational(0), 64).sign() == SignResult::Zero);
    // sqrt(8) - sqrt(6) is positive and already certifiable at 128 bits
    auto diff = [](long bits) {
        return Interval::sqrt(Rational(8), bits) - Interval::sqrt(Rational(6), bits);
    };
    CHECK(diff(128).sign() == SignResult::Positive);
    CHECK(certified_sign(diff) == SignResult::Positive);
    // sqrt(4) is exact in binary, so the point enclosure certifies Zero
    auto zero = [](long bits) {
        return Interval::sqrt(Rational(4), bits) - Interval(Rational(2), bits);
    };
    CHECK(certified_sign(zero) == SignResult::Zero);
    // sqrt(2)^2 - 2 is exactly zero but sqrt(2) is inexact: the enclosure
    // straddles 0 at every precision, so escalation must give up, not guess
    auto straddle = [](long bits) {
        Interval r = Interval::sqrt(Rational(2), bits);
        return r * r - Interval(Rational(2), bits);
    };
    CHECK(certified_sign(straddle, 64, 512) == SignResult::Indeterminate);
    CHECK_THROWS_AS(Interval::sqrt(Rational(-1), 64), InvalidParams);
}

TEST_CASE("interval determinant encloses the exact determinant") {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 3;
        Matrix<Rational> m(n, n, Rational(0));
        Matrix<Interval> mi(n, n, Interval(Rational(0), 128));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = random_rational(rng);
                mi(i, j) = Interval(m(i, j), 128);
            }
        try {
            CHECK(det(mi).contains(det(m)));
        } catch (const IndeterminateSign&) {
            // legitimate when a pivot's enclosure straddles zero
        }
    }
}

TEST_CASE("interval rhs solve encloses the exact solution") {
    Matrix<Rational> m(2, 2, Rational(0));
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = 3;
    Vec<Rational> b{Rational(5), Rational(10)};
    Vec<Rational> exact = solve_linear(m, b);
    Vec<Interval> bi{Interval(b[0], 128), Interval(b[1], 128)};
    Vec<Interval> enclosed = solve_linear(m, bi, 128);
    for (std::size_t i = 0; i < 2; ++i) CHECK(enclosed[i].contains(exact[i]));
}

TEST_CASE("interval endpoint strings are scientific decimals") {
    Interval half(make_rational(1, 2), 64);
    CHECK(half.lower_string() == "5e-1");
    CHECK(Interval(Rational(0), 64).upper_string() == "0");
}
