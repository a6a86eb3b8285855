#include "oracles.hpp"

#include "rbfimex/errors.hpp"
#include "rbfimex/poisson.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rbfimex;

TEST(FDir, Values) {
    const SourceParams p;
    EXPECT_EQ(f_dir(p.position, p), 1.0);
    const Vec2 unit_exponent = p.position + Vec2(std::sqrt(1.0 / p.alpha), 0.0);
    EXPECT_NEAR(f_dir(unit_exponent, p), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(f_dir(unit_exponent, p), 0.3678794, 1e-7);
    // exp(-500) ~ 7.1e-218: tiny, still a normal double.
    EXPECT_EQ(f_dir(Vec2(0.0, 0.0), p), std::exp(-500.0));
    EXPECT_LT(f_dir(Vec2(0.0, 0.0), p), 1e-200);
}

TEST(FDir, BoundedWithPeakAtSource) {
    std::mt19937_64 rng(1);
    const SourceParams p{{0.2, -0.1}, 30.0};
    for (const Vec2& x : oracle::random_points(rng, 500)) {
        const double v = f_dir(x, p);
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, 1.0);
    }
}

TEST(FLap, Values) {
    const SourceParams p;
    EXPECT_EQ(f_lap(p.position, p), -4000.0);
    const Vec2 zero_ring = p.position + Vec2(0.0, std::sqrt(1.0 / p.alpha));
    EXPECT_NEAR(f_lap(zero_ring, p), 0.0, 1e-9);
}

TEST(FLap, MatchesFiniteDifferences) {
    std::mt19937_64 rng(2);
    for (double alpha : {1.0, 100.0, 1000.0}) {
        const SourceParams p{{0.5, 0.5}, alpha};
        const double spread = 2.0 / std::sqrt(alpha);
        const auto f = [&](const Vec2& x) { return f_dir(x, p); };
        for (const Vec2& d : oracle::random_points(rng, 100, -spread, spread)) {
            const Vec2 x = p.position + d;
            const double exact = f_lap(x, p);
            const double fd = oracle::fd_laplacian(f, x, 1e-5 / std::sqrt(alpha));
            const double scale = std::max(std::abs(exact), 4.0 * alpha * f_dir(x, p));
            EXPECT_NEAR(fd, exact, 1e-4 * scale) << "alpha " << alpha;
        }
    }
}

TEST(FNeu, GradientMatchesFiniteDifferences) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    for (double alpha : {1.0, 100.0}) {
        const SourceParams p{{0.5, 0.5}, alpha};
        const auto f = [&](const Vec2& x) { return f_dir(x, p); };
        const double spread = 2.0 / std::sqrt(alpha);
        for (const Vec2& d : oracle::random_points(rng, 100, -spread, spread)) {
            const Vec2 x = p.position + d;
            const double a = ang(rng);
            const Vec2 n(std::cos(a), std::sin(a));
            const double exact = f_neu(x, n, p);
            const double fd = oracle::fd_directional(f, x, n, 1e-6 / std::sqrt(alpha));
            const double scale = std::max(std::abs(exact), 2.0 * std::sqrt(alpha) * f_dir(x, p));
            EXPECT_NEAR(fd, exact, 1e-4 * scale);
        }
    }
}

TEST(FNeu, Values) {
    const SourceParams p{{0.5, 0.5}, 1.0};
    EXPECT_NEAR(f_neu(Vec2(-1.0, 0.0), Vec2(-1.0, 0.0), p), -3.0 * std::exp(-2.5), 1e-15);
    EXPECT_NEAR(f_neu(Vec2(-1.0, 0.0), Vec2(-1.0, 0.0), p), -0.246255, 1e-6);
    // (x - x_s) = (-1, -1) is orthogonal to (1, -1)/sqrt(2).
    EXPECT_NEAR(f_neu(Vec2(-0.5, -0.5), Vec2(1.0, -1.0).normalized(), p), 0.0, 1e-16);
    // Literal variant dots x itself with the normal.
    const Vec2 x(-0.6, 0.8);
    EXPECT_NEAR(f_neu(x, x, p, NeumannMode::PositionDotNormal), -2.0 * f_dir(x, p) * 1.0, 1e-15);

    const SourceParams strong;
    for (auto mode : {NeumannMode::GradientConsistent, NeumannMode::PositionDotNormal})
        EXPECT_EQ(f_neu(Vec2(-1.0, 0.0), Vec2(-1.0, 0.0), strong, mode), 0.0);
}

TEST(Problem, ModesAndValidation) {
    EXPECT_EQ(parse_neumann_mode("gradient"), NeumannMode::GradientConsistent);
    EXPECT_EQ(parse_neumann_mode("literal"), NeumannMode::PositionDotNormal);
    EXPECT_THROW(parse_neumann_mode("both"), ConfigError);
    EXPECT_THROW(gaussian_source_problem(SourceParams{{0.0, 0.0}, 0.0}), ConfigError);

    const SourceParams p{{0.1, 0.2}, 5.0};
    const auto bvp = gaussian_source_problem(p, NeumannMode::PositionDotNormal);
    const Vec2 x(0.3, -0.4), n(0.6, -0.8);
    EXPECT_EQ(bvp.exact(x), f_dir(x, p));
    EXPECT_EQ(bvp.laplacian(x), f_lap(x, p));
    EXPECT_EQ(bvp.neumann(x, n), f_neu(x, n, p, NeumannMode::PositionDotNormal));
}
