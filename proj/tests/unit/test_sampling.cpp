#include "oracles.hpp"

#include "rbfimex/errors.hpp"
#include "rbfimex/sampling.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace rbfimex;

TEST(Shepard, ExactHitReturnsNodeValue) {
    const std::vector<Vec2> pts{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const ShepardInterpolator s(pts, 3);
    EXPECT_EQ(s(Vec2(1, 0), v), 2.0);
    EXPECT_EQ(s(Vec2(1.0 + 1e-13, 0), v), 2.0);
}

TEST(Shepard, EquidistantPairAverages) {
    const std::vector<Vec2> pts{{-1, 0}, {1, 0}};
    const std::vector<double> v{1.0, 5.0};
    EXPECT_DOUBLE_EQ(ShepardInterpolator(pts, 2)(Vec2(0, 0.3), v), 3.0);
}

TEST(Shepard, MatchesDirectFormula) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = oracle::random_points(rng, 10, -1.0, 1.0);
        std::vector<double> v(pts.size());
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (auto& x : v) x = u(rng);
        const auto q = oracle::random_points(rng, 1, -1.2, 1.2)[0];
        const auto nbrs = oracle::brute_force_knn_query(pts, q, 9);
        const double expect = oracle::shepard_direct(q, pts, v, nbrs, 2.0);
        EXPECT_NEAR(ShepardInterpolator(pts, 9)(q, v), expect, 1e-12 * std::max(1.0, std::abs(expect)));
    }
}

TEST(Shepard, ConvexCombination) {
    std::mt19937_64 rng(4);
    const auto pts = oracle::random_points(rng, 300, 0.0, 1.0);
    std::vector<double> v(pts.size());
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    for (auto& x : v) x = u(rng);
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    const ShepardInterpolator s(pts, 9, 2.0);
    for (const auto& q : oracle::random_points(rng, 200, -0.1, 1.1)) {
        const double val = s(q, v);
        EXPECT_GE(val, lo - 1e-14);
        EXPECT_LE(val, hi + 1e-14);
    }
    std::vector<double> ones(pts.size(), 1.0);
    EXPECT_NEAR(s(Vec2(0.37, 0.61), ones), 1.0, 1e-15);
}

TEST(Shepard, RejectsBadParameters) {
    const std::vector<Vec2> pts{{0, 0}, {1, 0}};
    EXPECT_THROW(ShepardInterpolator(std::span<const Vec2>{}, 1), ConfigError);
    EXPECT_THROW(ShepardInterpolator(pts, 0), ConfigError);
    EXPECT_THROW(ShepardInterpolator(pts, 3), ConfigError);
    EXPECT_THROW(ShepardInterpolator(pts, 2, 0.0), ConfigError);
}

TEST(Normalized, DividesByMaximum) {
    const std::vector<double> v{0.5, 2.0, 1.0};
    const auto n = normalized(v);
    EXPECT_EQ(n[1], 1.0);
    EXPECT_EQ(n[0], 0.25);
    const std::vector<double> zeros(3, 0.0);
    EXPECT_EQ(normalized(zeros), zeros);
}

TEST(SampleLine, ChordEndpointsAndNormalization) {
    DomainSpec spec;
    spec.spacing = 0.1;
    const NodeSet nodes = generate_nodes(spec);
    IndicatorField f;
    f.u_im.resize(nodes.size());
    f.eps_an.resize(nodes.size());
    f.eps_imex.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Vec2& p = nodes.positions[i];
        f.u_im[i] = 1.0 + p.x();
        f.eps_an[i] = p.squaredNorm();
        f.eps_imex[i] = is_boundary(nodes.kinds[i]) ? 0.0 : 1.0 + p.y();
    }
    const auto line = sample_line(nodes, f, spec.domain(), 50);
    ASSERT_EQ(line.t.size(), 50u);
    const double end = std::sqrt(0.5);
    EXPECT_NEAR(line.t.front(), -end, 1e-12);
    EXPECT_NEAR(line.t.back(), end, 1e-12);
    EXPECT_NEAR(line.positions.front().norm(), 1.0, 1e-12);
    EXPECT_NEAR(line.positions.back().norm(), 1.0, 1e-12);
    for (std::size_t i = 0; i < line.t.size(); ++i) {
        EXPECT_EQ(line.positions[i].x(), line.t[i]);
        EXPECT_EQ(line.positions[i].y(), line.t[i]);
        if (i > 0) EXPECT_GT(line.t[i], line.t[i - 1]);
    }
    for (const auto* v : {&line.u_im_norm, &line.eps_an_norm, &line.eps_imex_norm})
        EXPECT_EQ(*std::max_element(v->begin(), v->end()), 1.0);
    EXPECT_THROW(sample_line(nodes, f, spec.domain(), 1), ConfigError);
    DiskDomain shifted{Vec2(3.0, -3.0), 1.0};
    EXPECT_THROW(sample_line(nodes, f, shifted, 10), ConfigError);
}
