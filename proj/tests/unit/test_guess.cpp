#include <gtest/gtest.h>

#include <cmath>

#include "fvspike/error.hpp"
#include "fvspike/expression.hpp"
#include "fvspike/guess.hpp"
#include "oracles.hpp"

using namespace fvspike;

namespace {

GuessSpec builtin(BuiltinGuess g, double m = 0.0) {
    BuiltinSpec b;
    b.name = g;
    b.m = m;
    return GuessSpec{b, 1e-8};
}

}  // namespace

TEST(Guess, Constant) {
    const Mesh m = build_mesh(Domain::square(0, 1), 6, 6);
    BuiltinSpec b;
    b.name = BuiltinGuess::constant;
    b.kappa = 1.0;
    const GridField f = materialize_guess(GuessSpec{b}, m);
    for (const double v : f.values()) EXPECT_EQ(v, 1.0);
    b.kappa = 0.0;
    EXPECT_THROW((void)materialize_guess(GuessSpec{b}, m), InvalidArgument);
}

TEST(Guess, AbsCosOnFortyFiveGrid) {
    const Mesh m = build_mesh(Domain::square(-1, 1), 45, 45);
    const GridField f = materialize_guess(builtin(BuiltinGuess::abs_cos), m);
    for (int s = 1; s <= 2025; ++s) ASSERT_EQ(f.at_index(s), std::max(1e-8, std::abs(std::cos(s))));
}

TEST(Guess, ReciprocalSineIntegral) {
    const Mesh m = build_mesh(Domain::square(-1, 1), 20, 20);
    const GridField a = materialize_guess(builtin(BuiltinGuess::recip_si), m);
    const GridField b = materialize_guess(builtin(BuiltinGuess::recip_s_si), m);
    for (int s = 1; s <= 400; ++s) {
        ASSERT_NEAR(a.at_index(s), 1.0 / oracle::sine_integral(s), 1e-12);
        ASSERT_NEAR(b.at_index(s), 1.0 / (s * oracle::sine_integral(s)), 1e-14);
    }
}

TEST(Guess, EllipticFamiliesAgainstOracle) {
    const Mesh m = build_mesh(Domain::square(-10, 10), 20, 20);
    const GridField cd = materialize_guess(builtin(BuiltinGuess::abs_cd, 10), m);
    const GridField cn = materialize_guess(builtin(BuiltinGuess::recip_abs_cn, 20), m);
    for (int s = 1; s <= 400; ++s) {
        const oracle::Jacobi a = oracle::jacobi(s, 10.0);
        const double want_cd = std::abs(a.cn / a.dn);
        ASSERT_NEAR(cd.at_index(s), want_cd, 1e-9 * std::max(1.0, want_cd)) << s;
        const oracle::Jacobi b = oracle::jacobi(s, 20.0);
        const double want_cn = 1.0 / std::max(1e-8, std::abs(b.cn));
        ASSERT_NEAR(cn.at_index(s), want_cn, 1e-9 * std::max(1.0, want_cn)) << s;
    }
}

TEST(Guess, SecantClamp) {
    const Mesh m = build_mesh(Domain::square(0, 1), 30, 30);
    const GridField f = materialize_guess(builtin(BuiltinGuess::abs_sec), m);
    for (int s = 1; s <= 900; ++s) ASSERT_EQ(f.at_index(s), 1.0 / std::max(1e-8, std::abs(std::cos(s))));
}

TEST(Guess, BuiltinsPositiveFiniteProperty) {
    const Mesh m = build_mesh(Domain{-3, 5, 0, 2}, 37, 23);
    for (const BuiltinGuess g : {BuiltinGuess::recip_si, BuiltinGuess::recip_s_si, BuiltinGuess::abs_sec,
                                 BuiltinGuess::abs_cos, BuiltinGuess::abs_cd, BuiltinGuess::recip_abs_cn,
                                 BuiltinGuess::random_uniform}) {
        for (const double mm : {-2.0, 0.0, 0.5, 1.0, 10.0, 20.0}) {
            const GridField f = materialize_guess(builtin(g, mm), m);
            for (const double v : f.values()) {
                ASSERT_TRUE(std::isfinite(v)) << to_string(g);
                ASSERT_GT(v, 0.0) << to_string(g);
            }
        }
    }
}

TEST(Guess, Deterministic) {
    const Mesh m = build_mesh(Domain::square(0, 1), 16, 16);
    BuiltinSpec b;
    b.name = BuiltinGuess::random_uniform;
    b.seed = 99;
    const GridField a = materialize_guess(GuessSpec{b}, m);
    const GridField c = materialize_guess(GuessSpec{b}, m);
    EXPECT_EQ(a, c);
    b.seed = 100;
    EXPECT_NE(materialize_guess(GuessSpec{b}, m), a);
    for (const double v : a.values()) {
        EXPECT_GE(v, 0.5);
        EXPECT_LT(v, 1.5);
    }
}

TEST(Guess, ExpressionEnvironment) {
    const Mesh m = build_mesh(Domain{0, 4, 10, 12}, 4, 2);
    const GridField s = materialize_guess(GuessSpec{ExpressionSpec{"s"}}, m);
    const GridField ij = materialize_guess(GuessSpec{ExpressionSpec{"i + 10*j + 100*N"}}, m);
    const GridField xy = materialize_guess(GuessSpec{ExpressionSpec{"x + 100*y"}}, m);
    for (int j = 1; j <= 2; ++j) {
        for (int i = 1; i <= 4; ++i) {
            EXPECT_EQ(s(i, j), (j - 1) * 4 + i);
            EXPECT_EQ(ij(i, j), i + 10 * j + 400);
            EXPECT_DOUBLE_EQ(xy(i, j), (i - 0.5) + 100 * (10 + (j - 0.5)));
        }
    }
}

TEST(Guess, ExpressionClampAndErrors) {
    const Mesh m = build_mesh(Domain::square(0, 1), 3, 3);
    const GridField z = materialize_guess(GuessSpec{ExpressionSpec{"0*s"}, 1e-6}, m);
    for (const double v : z.values()) EXPECT_EQ(v, 1e-6);
    const GridField neg = materialize_guess(GuessSpec{ExpressionSpec{"-2"}}, m);
    for (const double v : neg.values()) EXPECT_EQ(v, -2.0);
    try {
        (void)materialize_guess(GuessSpec{ExpressionSpec{"1/(s-5)"}}, m);
        FAIL();
    } catch (const EvalError& e) {
        EXPECT_EQ(e.where().s, 5);
        EXPECT_EQ(e.where().i, 2);
        EXPECT_EQ(e.where().j, 2);
    }
    EXPECT_THROW((void)materialize_guess(GuessSpec{ExpressionSpec{"cn(s)"}}, m), ParseError);
}

TEST(Guess, Names) {
    for (const BuiltinGuess g : {BuiltinGuess::recip_si, BuiltinGuess::recip_s_si, BuiltinGuess::abs_sec,
                                 BuiltinGuess::abs_cos, BuiltinGuess::abs_cd, BuiltinGuess::recip_abs_cn,
                                 BuiltinGuess::constant, BuiltinGuess::random_uniform}) {
        EXPECT_EQ(builtin_from_string(to_string(g)), g);
    }
    EXPECT_THROW((void)builtin_from_string("sinc"), InvalidArgument);
    EXPECT_EQ(describe(builtin(BuiltinGuess::abs_cd, 10)), "abs_cd(m=10)");
    EXPECT_EQ(describe(GuessSpec{ExpressionSpec{"1/si(s)"}}), "expr: 1/si(s)");
}
