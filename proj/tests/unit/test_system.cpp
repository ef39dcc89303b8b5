#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fvspike/analysis.hpp"
#include "fvspike/error.hpp"
#include "fvspike/system.hpp"
#include "oracles.hpp"

using namespace fvspike;

namespace {

GridField random_field(const Mesh& m, std::mt19937_64& rng, double lo = 0.1, double hi = 2.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    GridField f(m);
    for (double& v : f.values()) v = u(rng);
    return f;
}

std::vector<double> to_vec(const GridField& f) { return {f.values().begin(), f.values().end()}; }

}  // namespace

TEST(PowQ, Examples) {
    EXPECT_EQ(pow_q(2, 3), 8);
    EXPECT_EQ(dpow_q(2, 3), 12);
    EXPECT_EQ(pow_q(-2, 3), -8);
    EXPECT_DOUBLE_EQ(pow_q(4, 1.5), 8);
    EXPECT_DOUBLE_EQ(pow_q(-4, 1.5), -8);
    EXPECT_EQ(dpow_q(0, 3), 0);
    EXPECT_EQ(dpow_q(0, 1), 1);
    EXPECT_THROW((void)dpow_q(0, 0.5), MathDomainError);
}

TEST(Params, Validation) {
    EXPECT_THROW((SolverParams{0.0, 2.0}).validate(), InvalidArgument);
    EXPECT_THROW((SolverParams{1.0, -1.0}).validate(), InvalidArgument);
    EXPECT_THROW((SolverParams{NAN, 2.0}).validate(), InvalidArgument);
    EXPECT_NO_THROW((SolverParams{1.0, 1.0}).validate());
}

TEST(Coefficients, UniformBases) {
    const StencilCoefficients c = uniform_coefficients(0.5, 2.0);
    EXPECT_DOUBLE_EQ(c.a, 0.25 + 4);
    EXPECT_DOUBLE_EQ(c.b, 0.25 + 6);
    EXPECT_DOUBLE_EQ(c.c, 0.25 + 8);
    EXPECT_DOUBLE_EQ(c.d_off, 2.0);
    EXPECT_DOUBLE_EQ(c.c - c.b, c.b - c.a);
}

TEST(Residual, ConstantTwoOnUnitSteps) {
    const Mesh m = build_mesh(Domain::square(0, 3), 3, 3);
    const GridField x(m, 2.0);
    const GridField f = residual(m, {0.7, 3.0}, x);
    const auto oracle_f = oracle::fv_residual_by_case(3, 1, 1, 0.7, 3.0, to_vec(x));
    for (int s = 1; s <= 9; ++s) {
        EXPECT_EQ(f.at_index(s), -6.0);
        EXPECT_EQ(f.at_index(s), oracle_f[static_cast<std::size_t>(s - 1)]);
    }
}

TEST(Residual, CentreBump) {
    const Mesh m = build_mesh(Domain::square(0, 3), 3, 3);
    GridField x(m, 1.0);
    x.at_index(5) = 2.0;
    const GridField f = residual(m, {1.0, 2.0}, x);
    EXPECT_DOUBLE_EQ(f.at_index(5), 2.0);
    EXPECT_DOUBLE_EQ(f.at_index(2), -1.0);
    EXPECT_DOUBLE_EQ(f.at_index(1), 0.0);
    const GridField fu = residual_uniform(m, {1.0, 2.0}, x);
    EXPECT_DOUBLE_EQ(fu.at_index(5), 2.0);
    EXPECT_DOUBLE_EQ(fu.at_index(2), -1.0);
    EXPECT_DOUBLE_EQ(fu.at_index(1), 0.0);
}

TEST(Residual, RootsAreExact) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dd(1e-3, 20), qq(0.2, 60), lo(-20, 20), sp(0.1, 40);
    std::uniform_int_distribution<int> nn(1, 25);
    for (int t = 0; t < 50; ++t) {
        const double x0 = lo(rng), y0 = lo(rng);
        const Mesh m = build_mesh(Domain{x0, x0 + sp(rng), y0, y0 + sp(rng)}, nn(rng), nn(rng));
        const SolverParams p{dd(rng), qq(rng)};
        for (const double k : {0.0, 1.0}) {
            const GridField f = residual(m, p, GridField(m, k));
            for (const double v : f.values()) ASSERT_EQ(v, 0.0);
        }
    }
}

TEST(Residual, ConstantAnnihilationProperty) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> kk(-3, 3), dd(1e-2, 5), qq(1, 6);
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + t % 9;
        const Mesh m = build_mesh(Domain::square(-1, 1 + 0.1 * t), n, n);
        const double k = kk(rng);
        const SolverParams p{dd(rng), qq(rng)};
        const double h2 = m.h_x() * m.h_y();
        const double expected = h2 * (k - pow_q(k, p.q));
        const GridField f = residual(m, p, GridField(m, k));
        for (const double v : f.values()) {
            ASSERT_NEAR(v, expected, 1e-14 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST(Residual, CaseOracleAnisotropic) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> sp(0.2, 5), dd(1e-3, 3), qq(0.5, 8);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + t % 2;
        const Mesh m = build_mesh(Domain{0, sp(rng), -1, -1 + sp(rng)}, n, n);
        const SolverParams p{dd(rng), qq(rng)};
        const GridField x = random_field(m, rng);
        const auto expect = oracle::fv_residual_by_case(n, m.h_x(), m.h_y(), p.d, p.q, to_vec(x));
        const GridField f = residual(m, p, x);
        for (std::size_t s = 0; s < expect.size(); ++s) ASSERT_EQ(f.values()[s], expect[s]) << "s=" << s + 1;
    }
}

TEST(Residual, MatrixFormOracle) {
    std::mt19937_64 rng(8);
    for (int n : {1, 2, 3, 5, 8}) {
        const Mesh m = build_mesh(Domain::square(-2, 2), n, n);
        const SolverParams p{0.3, 2.5};
        const GridField x = random_field(m, rng);
        const auto expect = oracle::uniform_matrix_residual(n, m.h_x(), p.d, p.q, to_vec(x));
        const GridField f = residual(m, p, x);
        for (std::size_t s = 0; s < expect.size(); ++s) ASSERT_NEAR(f.values()[s], expect[s], 1e-13);
    }
}

TEST(ResidualUniform, MatchesGeneral) {
    std::mt19937_64 rng(9);
    for (int n : {1, 2, 6, 12, 31}) {
        const Mesh m = build_mesh(Domain::square(-1, 1), n, n);
        const SolverParams p{0.05, 3.0};
        const GridField x = random_field(m, rng);
        const GridField a = residual(m, p, x);
        const GridField b = residual_uniform(m, p, x);
        for (std::size_t s = 0; s < x.size(); ++s) ASSERT_NEAR(a.values()[s], b.values()[s], 1e-14);
    }
}

TEST(ResidualUniform, Preconditions) {
    const SolverParams p{1, 2};
    const Mesh rect = build_mesh(Domain{0, 2, 0, 1}, 4, 4);
    EXPECT_THROW((void)residual_uniform(rect, p, GridField(rect, 1.0)), InvalidArgument);
    const Mesh tall = build_mesh(Domain{0, 1, 0, 2}, 3, 6);
    EXPECT_THROW((void)residual_uniform(tall, p, GridField(tall, 1.0)), InvalidArgument);
}

TEST(Residual, SizeMismatch) {
    const Mesh a = build_mesh(Domain::square(0, 1), 3, 3);
    const Mesh b = build_mesh(Domain::square(0, 1), 4, 4);
    EXPECT_THROW((void)residual(a, {1, 2}, GridField(b, 1.0)), DimensionMismatch);
}

TEST(Jacobian, InteriorRowAtOne) {
    const Mesh m = build_mesh(Domain::square(0, 3), 3, 3);
    const StencilMatrix J = jacobian(m, {1.0, 3.0}, GridField(m, 1.0));
    EXPECT_DOUBLE_EQ(J.entry(4, 4), 2.0);
    for (const std::size_t c : {1u, 3u, 5u, 7u}) EXPECT_DOUBLE_EQ(J.entry(4, c), -1.0);
    EXPECT_DOUBLE_EQ(J.entry(0, 0), 3.0 - 3.0);
    EXPECT_DOUBLE_EQ(J.entry(1, 1), 4.0 - 3.0);
}

TEST(Jacobian, LinearCaseIsConstant) {
    const Mesh m = build_mesh(Domain::square(0, 2), 4, 4);
    const double h2 = m.h_x() * m.h_x();
    const SolverParams p{0.4, 1.0};
    std::mt19937_64 rng(1);
    const auto J1 = jacobian(m, p, random_field(m, rng)).to_dense();
    const auto J2 = jacobian(m, p, random_field(m, rng)).to_dense();
    EXPECT_EQ(J1, J2);
    const StencilCoefficients c = uniform_coefficients(m.h_x(), p.d);
    EXPECT_DOUBLE_EQ(J1[0], c.a - h2);
    EXPECT_DOUBLE_EQ(J1[1 * 16 + 1], c.b - h2);
    EXPECT_DOUBLE_EQ(J1[5 * 16 + 5], c.c - h2);
}

TEST(Jacobian, CentralDifferences) {
    std::mt19937_64 rng(12);
    for (const double q : {1.8, 3.0, 5.0, 10.0}) {
        const Mesh m = build_mesh(Domain{-1, 1, -0.5, 1.5}, 10, 7);
        const SolverParams p{0.02, q};
        const GridField x = random_field(m, rng, 0.2, 1.5);
        const StencilMatrix J = jacobian(m, p, x);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(x.size()) - 1);
        for (int t = 0; t < 25; ++t) {
            const auto s = static_cast<std::size_t>(pick(rng));
            const double eps = 1e-6 * std::max(1.0, std::abs(x.values()[s]));
            GridField xp = x, xm = x;
            xp.values()[s] += eps;
            xm.values()[s] -= eps;
            const GridField fp = residual(m, p, xp), fm = residual(m, p, xm);
            double err = 0.0, scale = 0.0;
            for (std::size_t r = 0; r < x.size(); ++r) {
                const double fd = (fp.values()[r] - fm.values()[r]) / (2 * eps);
                err = std::max(err, std::abs(J.entry(r, s) - fd));
                scale = std::max(scale, std::abs(J.entry(r, s)));
            }
            ASSERT_LT(err / scale, 1e-6) << "q=" << q << " column " << s;
        }
    }
}

TEST(StencilMatrix, StructureInvariants) {
    const StencilMatrix A(4, 3);
    const std::size_t n = A.dimension();
    for (std::size_t r = 0; r < n; ++r) {
        int count = 0;
        for (std::size_t c = 0; c < n; ++c) {
            ASSERT_EQ(A.has_entry(r, c), A.has_entry(c, r));
            count += A.has_entry(r, c);
        }
        ASSERT_LE(count, 5);
    }
    EXPECT_FALSE(A.has_entry(3, 4));  // i = n_x does not wrap to the next row
    EXPECT_FALSE(A.has_entry(4, 3));
    EXPECT_TRUE(A.has_entry(0, 4));
}

TEST(StencilMatrix, MultiplyMatchesDense) {
    const Mesh m = build_mesh(Domain::square(0, 1), 5, 5);
    std::mt19937_64 rng(2);
    const StencilMatrix J = jacobian(m, {0.3, 2.0}, random_field(m, rng));
    const GridField v = random_field(m, rng, -1, 1);
    const std::vector<double> xv = to_vec(v);
    const auto y = J.multiply(xv);
    const auto yd = oracle::dense_multiply(J.to_dense(), xv);
    for (std::size_t r = 0; r < y.size(); ++r) EXPECT_NEAR(y[r], yd[r], 1e-14);
    double norm = 0.0;
    const auto D = J.to_dense();
    for (std::size_t r = 0; r < 25; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < 25; ++c) s += std::abs(D[r * 25 + c]);
        norm = std::max(norm, s);
    }
    EXPECT_DOUBLE_EQ(J.norm_inf(), norm);
}

TEST(Residual, SymmetryEquivariance) {
    std::mt19937_64 rng(21);
    const Mesh m = build_mesh(Domain::square(-1, 1), 7, 7);
    const SolverParams p{0.1, 3.0};
    const GridField x = random_field(m, rng);
    const GridField fx = residual(m, p, x);
    for (const Symmetry s : kAllSymmetries) {
        const GridField lhs = residual(m, p, apply_symmetry(s, x));
        const GridField rhs = apply_symmetry(s, fx);
        for (std::size_t k = 0; k < x.size(); ++k) {
            ASSERT_NEAR(lhs.values()[k], rhs.values()[k], 1e-15) << to_string(s);
        }
    }
}
