#include "rbfimex/errors.hpp"
#include "rbfimex/imex.hpp"
#include "rbfimex/pipeline.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rbfimex;

namespace {

NodeSet disk(double h) {
    DomainSpec spec;
    spec.spacing = h;
    return generate_nodes(spec);
}

std::vector<double> sample(const NodeSet& nodes, const std::function<double(const Vec2&)>& f) {
    std::vector<double> v(nodes.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(nodes.positions[i]);
    return v;
}

double max_interior_truncation(double h, const SourceParams& p) {
    const NodeSet nodes = disk(h);
    const auto hi = explicit_laplacian(nodes, 4, 3);
    const auto a_ex = explicit_reconstruct(sample(nodes, [&](const Vec2& x) { return f_dir(x, p); }), hi);
    double worst = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes.kinds[i] == NodeKind::Interior)
            worst = std::max(worst, std::abs(a_ex[i] - f_lap(nodes.positions[i], p)));
    return worst;
}

}  // namespace

TEST(ExplicitReconstruct, AnnihilatesConstants) {
    const NodeSet nodes = disk(0.05);
    const auto hi = explicit_laplacian(nodes, 4, 3);
    const auto a_ex = explicit_reconstruct(std::vector<double>(nodes.size(), 2.5), hi);
    for (std::size_t i = 0; i < nodes.size(); ++i) EXPECT_NEAR(a_ex[i], 0.0, 1e-7);
}

TEST(ExplicitReconstruct, ReproducesQuadratic) {
    const NodeSet nodes = disk(0.05);
    const auto hi = explicit_laplacian(nodes, 4, 3);
    const auto a_ex = explicit_reconstruct(sample(nodes, [](const Vec2& x) { return x.x() * x.x(); }), hi);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes.kinds[i] == NodeKind::Interior)
            EXPECT_NEAR(a_ex[i], 2.0, 1e-6);
        else
            EXPECT_EQ(a_ex[i], 0.0);
    }
}

TEST(ExplicitReconstruct, TruncationErrorShrinksWithSpacing) {
    const SourceParams p{{0.5, 0.5}, 100.0};
    const double coarse = max_interior_truncation(0.05, p);
    const double fine = max_interior_truncation(0.025, p);
    EXPECT_GT(coarse, 0.0);
    EXPECT_LT(fine, coarse);
}

TEST(Indicator, ExactInputsGiveZeroFields) {
    const NodeSet nodes = disk(0.1);
    const SourceParams p{{0.5, 0.5}, 10.0};
    const auto u = sample(nodes, [&](const Vec2& x) { return f_dir(x, p); });
    const auto a = sample(nodes, [&](const Vec2& x) { return f_lap(x, p); });
    const auto field = indicator(u, a, nodes, p);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        EXPECT_EQ(field.eps_an[i], 0.0);
        EXPECT_EQ(field.eps_imex[i], 0.0);
    }
}

TEST(Indicator, ExactSolutionLeavesOnlyTruncationError) {
    const NodeSet nodes = disk(0.05);
    const SourceParams p{{0.5, 0.5}, 100.0};
    const auto u = sample(nodes, [&](const Vec2& x) { return f_dir(x, p); });
    const auto field = evaluate_indicator(nodes, u, 2, 4, 3, gaussian_source_problem(p));
    double max_imex = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        EXPECT_EQ(field.eps_an[i], 0.0);
        EXPECT_GE(field.eps_imex[i], 0.0);
        if (is_boundary(nodes.kinds[i])) EXPECT_EQ(field.eps_imex[i], 0.0);
        max_imex = std::max(max_imex, field.eps_imex[i]);
    }
    EXPECT_GT(max_imex, 0.0);
    const auto peak = find_peak(field.eps_imex, nodes, true);
    EXPECT_LT((peak.position - p.position).norm(), 0.3);
    EXPECT_EQ(field.m_lo, 2);
    EXPECT_EQ(field.m_hi, 4);
}

TEST(Indicator, RejectsMismatchedInput) {
    const NodeSet nodes = disk(0.2);
    const std::vector<double> short_vec(nodes.size() - 1, 0.0);
    const std::vector<double> full(nodes.size(), 0.0);
    EXPECT_THROW(indicator(short_vec, full, nodes, SourceParams{}), ConfigError);
    EXPECT_THROW(evaluate_indicator(nodes, full, 4, 4, 3, gaussian_source_problem({})), ConfigError);
}

TEST(Argmax, InteriorFilterAndTies) {
    NodeSet nodes;
    nodes.push_back({1.0, 0.0}, NodeKind::DirichletBoundary, {1.0, 0.0});
    nodes.push_back({0.0, 0.0}, NodeKind::Interior);
    nodes.push_back({0.1, 0.0}, NodeKind::Interior);
    const std::vector<double> f{9.0, 3.0, 3.0};
    EXPECT_EQ(argmax(f, nodes, false), 0u);
    EXPECT_EQ(argmax(f, nodes, true), 1u);
    NodeSet only_boundary;
    only_boundary.push_back({1.0, 0.0}, NodeKind::DirichletBoundary, {1.0, 0.0});
    EXPECT_FALSE(argmax(std::vector<double>{1.0}, only_boundary, true).has_value());
}
