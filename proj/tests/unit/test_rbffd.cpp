#include "oracles.hpp"

#include "rbfimex/errors.hpp"
#include "rbfimex/rbffd.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rbfimex;

namespace {

Eigen::VectorXd weights_for(std::span<const Vec2> pts, const LinearOperator& op, int m) {
    const RbfConfig cfg{3, m, 2};
    return solve_local_weights(local_system(pts.front(), pts, op, cfg), op, 0);
}

}  // namespace

TEST(LocalSystem, PhsLaplacianRhsIsNineR) {
    std::mt19937_64 rng(1);
    const auto pts = oracle::random_stencil(rng, Vec2(0.3, -0.2), 12, 0.05);
    const auto sys = local_system(pts[0], pts, LinearOperator::laplacian(), RbfConfig{3, 2, 2});
    ASSERT_EQ(sys.matrix.rows(), 12 + 6);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const Vec2 q = (pts[j] - pts[0]) / sys.scale;
        EXPECT_NEAR(sys.rhs(static_cast<Eigen::Index>(j)), 9.0 * q.norm(), 1e-14);
        if (j == 0) continue;
        // Independent check: finite-difference Laplacian of |x - q|^3 at the origin.
        const auto phi = [&](const Vec2& x) { return std::pow((x - q).norm(), 3); };
        EXPECT_NEAR(sys.rhs(static_cast<Eigen::Index>(j)), oracle::fd_laplacian(phi, Vec2::Zero(), 1e-4), 1e-5);
    }
}

TEST(LocalSystem, MonomialRhs) {
    std::mt19937_64 rng(2);
    const auto pts = oracle::random_stencil(rng, Vec2(0.0, 0.0), 6, 0.1);
    const auto lap = local_system(pts[0], pts, LinearOperator::laplacian(), RbfConfig{3, 1, 2});
    EXPECT_EQ(lap.rhs.tail(3), Eigen::Vector3d::Zero());

    const auto dx = local_system(pts[0], pts, LinearOperator::directional_derivative({1.0, 0.0}), RbfConfig{3, 1, 2});
    // graded order 1, x, y
    EXPECT_EQ(dx.rhs(6 + 0), 0.0);
    EXPECT_EQ(dx.rhs(6 + 1), 1.0);
    EXPECT_EQ(dx.rhs(6 + 2), 0.0);
}

TEST(LocalSystem, FirstPointMustBeCentre) {
    const std::vector<Vec2> pts{{1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}};
    EXPECT_THROW(local_system(Vec2(0.0, 0.0), pts, LinearOperator::laplacian(), RbfConfig{3, 0, 2}), ConfigError);
}

TEST(MonomialBasis, GradedLexicographic) {
    const auto b = monomial_basis(2);
    const std::vector<MonomialExponent> expect{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    EXPECT_EQ(b, expect);
    EXPECT_EQ(monomial_basis(6).size(), 28u);
}

TEST(Weights, ConstantAndQuadratic) {
    std::mt19937_64 rng(3);
    for (int m : {2, 4}) {
        const double h = 0.02;
        const auto pts = oracle::random_stencil(rng, Vec2(-0.4, 0.7), stencil_size(m, 2), h);
        const auto w = weights_for(pts, LinearOperator::laplacian(), m);
        double sum = 0.0, sum_x2 = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            sum += w(static_cast<Eigen::Index>(i));
            sum_x2 += w(static_cast<Eigen::Index>(i)) * pts[i].x() * pts[i].x();
        }
        EXPECT_NEAR(sum, 0.0, 1e-9 / (h * h));
        EXPECT_NEAR(sum_x2, 2.0, 1e-8);
    }
}

TEST(Weights, PlusStencilIsClassicalFivePoint) {
    const double h = 0.1;
    const std::vector<Vec2> pts{{0.0, 0.0}, {h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}};
    const auto w = weights_for(pts, LinearOperator::laplacian(), 2);
    EXPECT_NEAR(w(0), -4.0 / (h * h), 1e-6 * 4.0 / (h * h));
    for (int i = 1; i < 5; ++i) EXPECT_NEAR(w(i), 1.0 / (h * h), 1e-6 / (h * h));
}

TEST(Weights, CollinearStencilIsDegenerate) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 12; ++i) pts.emplace_back(0.1 * (i % 2 ? -(i + 1) / 2 : i / 2), 0.0);
    const RbfConfig cfg{3, 2, 2};
    const auto sys = local_system(pts[0], pts, LinearOperator::laplacian(), cfg);
    try {
        solve_local_weights(sys, LinearOperator::laplacian(), 17);
        FAIL() << "expected a degeneracy error";
    } catch (const StencilDegeneracyError& e) {
        EXPECT_EQ(e.node(), 17u);
        EXPECT_NE(std::string(e.what()).find("17"), std::string::npos);
    }
}

TEST(Weights, PolynomialExactnessRandomStencils) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (int m : {2, 4, 6}) {
        for (int trial = 0; trial < 20; ++trial) {
            const double h = 0.01 + 0.04 * (u(rng) + 1.0);
            const Vec2 c(u(rng), u(rng));
            const auto pts = oracle::random_stencil(rng, c, stencil_size(m, 2), h);
            const double a = ang(rng);
            const Vec2 dir(std::cos(a), std::sin(a));
            for (const auto& op : {LinearOperator::laplacian(), LinearOperator::directional_derivative(dir)}) {
                const auto w = weights_for(pts, op, m);
                for (const auto& e : monomial_basis(m)) {
                    double approx = 0.0, vmax = 1.0;
                    for (std::size_t i = 0; i < pts.size(); ++i) {
                        const double v = oracle::monomial(pts[i], e[0], e[1]);
                        approx += w(static_cast<Eigen::Index>(i)) * v;
                        vmax = std::max(vmax, std::abs(v));
                    }
                    const double exact = op.kind() == LinearOperator::Kind::Laplacian
                                             ? oracle::monomial_laplacian(c, e[0], e[1])
                                             : oracle::monomial_directional(c, e[0], e[1], dir);
                    EXPECT_LE(std::abs(approx - exact), 1e-8 * vmax / std::pow(h, op.order()))
                        << "m=" << m << " x^" << e[0] << " y^" << e[1];
                }
            }
        }
    }
}

TEST(Weights, ScaleConsistency) {
    std::mt19937_64 rng(5);
    const auto pts = oracle::random_stencil(rng, Vec2(0.0, 0.0), 30, 0.03);
    const double c = 3.7;
    std::vector<Vec2> scaled(pts);
    for (auto& p : scaled) p *= c;
    for (const auto& op : {LinearOperator::laplacian(), LinearOperator::directional_derivative({0.6, 0.8})}) {
        const auto w = weights_for(pts, op, 4);
        const auto ws = weights_for(scaled, op, 4);
        const double f = std::pow(c, op.order());
        EXPECT_LE((ws * f - w).cwiseAbs().maxCoeff(), 1e-9 * w.cwiseAbs().maxCoeff());
    }
}

TEST(Weights, TranslationInvariance) {
    std::mt19937_64 rng(6);
    const auto pts = oracle::random_stencil(rng, Vec2(0.0, 0.0), 12, 0.05);
    std::vector<Vec2> moved(pts);
    for (auto& p : moved) p += Vec2(0.75, -0.4);
    const auto w = weights_for(pts, LinearOperator::laplacian(), 2);
    const auto wm = weights_for(moved, LinearOperator::laplacian(), 2);
    EXPECT_LE((w - wm).cwiseAbs().maxCoeff(), 1e-10 * w.cwiseAbs().maxCoeff());
}

TEST(ComputeWeights, RowsAndApply) {
    DomainSpec spec;
    spec.spacing = 0.08;
    const NodeSet nodes = generate_nodes(spec);
    const auto stencils = build_stencils_for_degree(nodes, 2);
    const RbfConfig cfg{3, 2, 2};
    const auto interior = nodes_of_kind(nodes, NodeKind::Interior);
    const auto w = compute_weights(nodes, stencils, LinearOperator::laplacian(), cfg, interior);
    ASSERT_EQ(w.row_count(), interior.size());
    std::vector<double> q(nodes.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = nodes.positions[i].squaredNorm() + 3.0 * nodes.positions[i].x();
    for (double v : w.apply(q)) EXPECT_NEAR(v, 4.0, 1e-8);
    for (double x : w.weights) EXPECT_TRUE(std::isfinite(x));

    const auto neumann = nodes_of_kind(nodes, NodeKind::NeumannBoundary);
    const auto dn = compute_normal_derivative_weights(nodes, stencils, cfg, neumann);
    const auto dq = dn.apply(q);
    for (std::size_t r = 0; r < dn.row_count(); ++r) {
        const auto i = static_cast<std::size_t>(dn.rows[r]);
        const Vec2 grad = 2.0 * nodes.positions[i] + Vec2(3.0, 0.0);
        EXPECT_NEAR(dq[r], grad.dot(nodes.normals[i]), 1e-9);
    }
    EXPECT_THROW(compute_normal_derivative_weights(nodes, stencils, cfg, interior), ConfigError);
}

TEST(Config, Validation) {
    EXPECT_THROW((RbfConfig{2, 2, 2}.validate()), ConfigError);
    EXPECT_THROW((RbfConfig{1, 2, 2}.validate()), ConfigError);
    EXPECT_THROW((RbfConfig{3, -1, 2}.validate()), ConfigError);
    EXPECT_THROW((RbfConfig{3, 2, 3}.validate()), ConfigError);
    EXPECT_NO_THROW((RbfConfig{5, 4, 2}.validate()));
    EXPECT_THROW(LinearOperator::directional_derivative({1.0, 1.0}), ConfigError);
    EXPECT_EQ(LinearOperator::laplacian().order(), 2);
    EXPECT_EQ(LinearOperator::directional_derivative({0.0, -1.0}).order(), 1);
}
