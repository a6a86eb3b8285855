#pragma once

#include "rbfimex/geometry.hpp"
#include "rbfimex/imex.hpp"
#include "rbfimex/nodegen.hpp"
#include "rbfimex/stencil.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rbfimex {

/// Inverse-distance-weighted (Shepard) interpolation over the k nearest nodes:
///   sum v_i d_i^-p / sum d_i^-p,
/// returning a node's value outright when the query is within 1e-12 of it.
class ShepardInterpolator {
public:
    /// Throws ConfigError on an empty point set or k == 0.
    ShepardInterpolator(std::span<const Vec2> points, std::size_t k = 9, double power = 2.0);

    double operator()(const Vec2& query, std::span<const double> values) const;

    std::size_t neighbors() const noexcept { return k_; }

private:
    KdTree tree_;
    std::size_t k_;
    double power_;
    mutable std::vector<std::pair<double, Index>> scratch_;
};

/// One-shot Shepard evaluation; builds the search tree on every call.
double shepard(const Vec2& query, const NodeSet& nodes, std::span<const double> values,
               std::size_t k, double power = 2.0);

/// Fields sampled at equally spaced points of the chord y = x through the disk.
/// `t` is the x (= y) coordinate of each sample.
struct LineSample {
    std::vector<double> t;
    std::vector<Vec2> positions;
    std::vector<double> u_im, eps_an, eps_imex;
    std::vector<double> u_im_norm, eps_an_norm, eps_imex_norm;
    std::size_t neighbors = 9;
};

/// Each field divided by its maximum over the samples (left as is when that maximum is <= 0).
std::vector<double> normalized(std::span<const double> values);

/// Samples `count` >= 2 points from chord end to chord end.
LineSample sample_line(const NodeSet& nodes, const IndicatorField& fields, const DiskDomain& domain,
                       std::size_t count = 400, std::size_t k = 9, double power = 2.0);

}  // namespace rbfimex
