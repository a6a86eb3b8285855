#include "rbfimex/nodegen.hpp"

#include "rbfimex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>

namespace rbfimex {

void DomainSpec::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw ConfigError("domain radius must be positive");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw ConfigError("node spacing must be positive");
    if (std::lround(2.0 * std::numbers::pi * radius / spacing) < 2)
        throw ConfigError("node spacing " + std::to_string(spacing) +
                          " is too large for a disk of radius " + std::to_string(radius));
    if (fill_candidates < 3)
        throw ConfigError("fill needs at least 3 candidates per front node");
}

std::size_t NodeSet::count(NodeKind k) const {
    return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), k));
}

void NodeSet::push_back(const Vec2& p, NodeKind k, const Vec2& n) {
    positions.push_back(p);
    kinds.push_back(k);
    normals.push_back(is_boundary(k) ? n : Vec2::Zero());
}

namespace {

// cos/sin with exact zeros at quarter turns so the x <= 0 split is not decided
// by a 1e-17 residue.
Vec2 unit_direction(double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    if (std::abs(c) < 1e-14) c = 0.0;
    if (std::abs(s) < 1e-14) s = 0.0;
    return {c, s};
}

// Uniform in [0, 1) from the top 53 bits; stable across standard libraries.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class BackgroundGrid {
public:
    BackgroundGrid(const Vec2& lo, double extent, double cell)
        : lo_(lo), inv_cell_(1.0 / cell) {
        dim_ = std::max(1, static_cast<int>(std::ceil(extent * inv_cell_)) + 1);
        head_.assign(static_cast<std::size_t>(dim_) * dim_, -1);
    }

    void insert(Index node, const Vec2& p) {
        const auto c = cell_of(p);
        const std::size_t slot = static_cast<std::size_t>(c.second) * dim_ + c.first;
        if (next_.size() <= static_cast<std::size_t>(node)) next_.resize(node + 1, -1);
        next_[node] = head_[slot];
        head_[slot] = node;
    }

    // True iff some stored point lies strictly closer than sqrt(min_dist2) to p.
    bool has_point_within(const Vec2& p, double min_dist2, const std::vector<Vec2>& pts) const {
        const auto c = cell_of(p);
        for (int j = std::max(0, c.second - 1); j <= std::min(dim_ - 1, c.second + 1); ++j) {
            for (int i = std::max(0, c.first - 1); i <= std::min(dim_ - 1, c.first + 1); ++i) {
                for (Index n = head_[static_cast<std::size_t>(j) * dim_ + i]; n >= 0; n = next_[n]) {
                    if ((pts[n] - p).squaredNorm() < min_dist2) return true;
                }
            }
        }
        return false;
    }

private:
    std::pair<int, int> cell_of(const Vec2& p) const {
        auto clampi = [this](double v) {
            return std::clamp(static_cast<int>(std::floor(v)), 0, dim_ - 1);
        };
        return {clampi((p.x() - lo_.x()) * inv_cell_), clampi((p.y() - lo_.y()) * inv_cell_)};
    }

    Vec2 lo_;
    double inv_cell_;
    int dim_ = 1;
    std::vector<Index> head_;
    std::vector<Index> next_;
};

}  // namespace

NodeSet discretize_boundary(const DomainSpec& spec) {
    spec.validate();
    const auto count = std::lround(2.0 * std::numbers::pi * spec.radius / spec.spacing);

    NodeSet nodes;
    nodes.spacing = spec.spacing;
    nodes.positions.reserve(count);
    nodes.kinds.reserve(count);
    nodes.normals.reserve(count);
    for (long k = 0; k < count; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
        const Vec2 dir = unit_direction(angle);
        const Vec2 p = spec.center + spec.radius * dir;
        nodes.push_back(p, p.x() <= 0.0 ? NodeKind::NeumannBoundary : NodeKind::DirichletBoundary, dir);
    }
    return nodes;
}

NodeSet fill_interior(const DomainSpec& spec, NodeSet nodes) {
    spec.validate();
    const DiskDomain domain = spec.domain();
    const double h = spec.spacing;
    // Candidates sit at exactly h from their parent; the slack keeps rounding
    // from rejecting them against that parent.
    const double min_dist2 = h * h * (1.0 - 1e-9);
    const double depth = -0.5 * h;

    const Vec2 lo = spec.center - Vec2::Constant(spec.radius);
    BackgroundGrid grid(lo, 2.0 * spec.radius, h);
    std::deque<Index> front;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        grid.insert(static_cast<Index>(i), nodes.positions[i]);
        front.push_back(static_cast<Index>(i));
    }

    std::mt19937_64 rng(spec.seed);
    const int k = spec.fill_candidates;
    while (!front.empty()) {
        const Index parent = front.front();
        front.pop_front();
        const Vec2 origin = nodes.positions[parent];
        const double offset = 2.0 * std::numbers::pi * uniform01(rng);
        for (int c = 0; c < k; ++c) {
            const double angle = offset + 2.0 * std::numbers::pi * c / k;
            const Vec2 cand = origin + h * Vec2(std::cos(angle), std::sin(angle));
            if (!(domain.signed_distance(cand) < depth)) continue;
            if (grid.has_point_within(cand, min_dist2, nodes.positions)) continue;
            const auto id = static_cast<Index>(nodes.size());
            nodes.push_back(cand, NodeKind::Interior);
            grid.insert(id, cand);
            front.push_back(id);
        }
    }
    return nodes;
}

NodeSet generate_nodes(const DomainSpec& spec) {
    return fill_interior(spec, discretize_boundary(spec));
}

}  // namespace rbfimex
