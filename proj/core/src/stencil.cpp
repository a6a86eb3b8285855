#include "rbfimex/stencil.hpp"

#include "rbfimex/errors.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace rbfimex {

KdTree::KdTree(std::span<const Vec2> points, int leaf_size)
    : points_(points.begin(), points.end()), leaf_size_(std::max(1, leaf_size)) {
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), Index{0});
    if (!points_.empty()) {
        nodes_.reserve(2 * points_.size() / leaf_size_ + 2);
        build(0, static_cast<Index>(points_.size()), 0);
    }
}

Index KdTree::build(Index begin, Index end, int depth) {
    const auto id = static_cast<Index>(nodes_.size());
    nodes_.push_back({begin, end});
    if (end - begin <= leaf_size_) return id;

    // Split along the wider extent at the median.
    Vec2 lo = points_[order_[begin]];
    Vec2 hi = lo;
    for (Index i = begin; i < end; ++i) {
        lo = lo.cwiseMin(points_[order_[i]]);
        hi = hi.cwiseMax(points_[order_[i]]);
    }
    const int axis = (hi - lo).x() >= (hi - lo).y() ? 0 : 1;
    const Index mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](Index a, Index b) { return points_[a][axis] < points_[b][axis]; });

    const double split = points_[order_[mid]][axis];
    const Index left = build(begin, mid, depth + 1);
    const Index right = build(mid, end, depth + 1);
    Node& node = nodes_[id];
    node.axis = axis;
    node.split = split;
    node.left = left;
    node.right = right;
    return id;
}

void KdTree::nearest(const Vec2& query, std::size_t k,
                     std::vector<std::pair<double, Index>>& out) const {
    if (k > points_.size())
        throw ConfigError("requested " + std::to_string(k) + " neighbours from " +
                          std::to_string(points_.size()) + " points");
    out.clear();
    if (k == 0) return;

    // Max-heap on (dist2, index): top is the current worst accepted candidate.
    std::priority_queue<std::pair<double, Index>> heap;
    auto visit = [&](auto&& self, Index id) -> void {
        const Node& node = nodes_[id];
        if (node.axis < 0) {
            for (Index i = node.begin; i < node.end; ++i) {
                const Index p = order_[i];
                const std::pair<double, Index> cand{(points_[p] - query).squaredNorm(), p};
                if (heap.size() < k) {
                    heap.push(cand);
                } else if (cand < heap.top()) {
                    heap.pop();
                    heap.push(cand);
                }
            }
            return;
        }
        const double delta = query[node.axis] - node.split;
        const Index near = delta < 0.0 ? node.left : node.right;
        const Index far = delta < 0.0 ? node.right : node.left;
        self(self, near);
        // <= keeps equidistant points on the far side eligible for the index tie-break.
        if (heap.size() < k || delta * delta <= heap.top().first) self(self, far);
    };
    visit(visit, 0);

    out.resize(heap.size());
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
        *it = heap.top();
        heap.pop();
    }
}

std::vector<Index> KdTree::nearest(const Vec2& query, std::size_t k) const {
    std::vector<std::pair<double, Index>> found;
    nearest(query, k, found);
    std::vector<Index> idx(found.size());
    std::transform(found.begin(), found.end(), idx.begin(), [](const auto& f) { return f.second; });
    return idx;
}

std::size_t monomial_count(int monomial_degree, int dimension) {
    if (monomial_degree < 0 || dimension < 1) throw ConfigError("monomial degree must be >= 0 and dimension >= 1");
    // C(m + d, d) computed incrementally; exact for the small arguments used here.
    std::size_t c = 1;
    for (int i = 1; i <= dimension; ++i)
        c = c * static_cast<std::size_t>(monomial_degree + i) / static_cast<std::size_t>(i);
    return c;
}

std::size_t stencil_size(int monomial_degree, int dimension) {
    return 2 * monomial_count(monomial_degree, dimension);
}

StencilTable build_stencils(const NodeSet& nodes, std::size_t n) {
    if (n == 0) throw ConfigError("stencil size must be positive");
    if (n > nodes.size())
        throw ConfigError("stencil size " + std::to_string(n) + " exceeds node count " +
                          std::to_string(nodes.size()));

    const KdTree tree(nodes.positions);
    StencilTable table;
    table.stencil_size = n;
    table.indices.resize(nodes.size() * n);
    std::vector<std::pair<double, Index>> found;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        tree.nearest(nodes.positions[i], n, found);
        auto row = table.indices.begin() + static_cast<std::ptrdiff_t>(i * n);
        // Coincident points would otherwise let a smaller index displace the centre.
        const auto self = std::find_if(found.begin(), found.end(),
                                       [&](const auto& f) { return f.second == static_cast<Index>(i); });
        if (self != found.end() && self != found.begin()) std::rotate(found.begin(), self, self + 1);
        for (std::size_t j = 0; j < n; ++j) row[j] = found[j].second;
    }
    return table;
}

StencilTable build_stencils_among(const NodeSet& nodes, std::size_t n, std::span<const Index> candidates) {
    if (n == 0) throw ConfigError("stencil size must be positive");
    std::vector<Vec2> pts;
    pts.reserve(candidates.size());
    for (const Index c : candidates) {
        if (c < 0 || static_cast<std::size_t>(c) >= nodes.size()) throw ConfigError("candidate index out of range");
        pts.push_back(nodes.positions[static_cast<std::size_t>(c)]);
    }
    // One spare neighbour covers the case where the centre is itself a candidate.
    const std::size_t want = std::min(n, pts.size());
    if (want + 1 < n) throw ConfigError("stencil size " + std::to_string(n) + " exceeds candidate count " +
                                        std::to_string(pts.size()) + " + 1");
    const KdTree tree(pts);

    StencilTable table;
    table.stencil_size = n;
    table.indices.resize(nodes.size() * n);
    std::vector<std::pair<double, Index>> found;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        tree.nearest(nodes.positions[i], want, found);
        auto row = table.indices.begin() + static_cast<std::ptrdiff_t>(i * n);
        row[0] = static_cast<Index>(i);
        std::size_t filled = 1;
        for (const auto& f : found) {
            const Index node = candidates[static_cast<std::size_t>(f.second)];
            if (node == static_cast<Index>(i)) continue;
            if (filled == n) break;
            row[filled++] = node;
        }
        if (filled != n) throw ConfigError("not enough candidates to fill stencil of node " + std::to_string(i));
    }
    return table;
}

StencilTable build_stencils_for_degree(const NodeSet& nodes, int monomial_degree) {
    StencilTable table = build_stencils(nodes, stencil_size(monomial_degree, 2));
    table.monomial_degree = monomial_degree;
    return table;
}

}  // namespace rbfimex
