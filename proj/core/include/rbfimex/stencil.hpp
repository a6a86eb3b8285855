#pragma once

#include "rbfimex/geometry.hpp"
#include "rbfimex/nodegen.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rbfimex {

/// Static 2-d tree over a point cloud, used for exact k-nearest-neighbour
/// queries. Ordering is by (squared distance, index), so equidistant points
/// resolve to the smaller index.
class KdTree {
public:
    explicit KdTree(std::span<const Vec2> points, int leaf_size = 8);

    std::size_t size() const noexcept { return points_.size(); }

    /// The k nearest points to `query`, nearest first. Throws ConfigError if k > size().
    std::vector<Index> nearest(const Vec2& query, std::size_t k) const;

    /// Same as nearest() but also returns the squared distances.
    void nearest(const Vec2& query, std::size_t k, std::vector<std::pair<double, Index>>& out) const;

private:
    struct Node {
        // Leaves: [begin, end) into order_. Inner nodes: split axis/value and children.
        Index begin = 0;
        Index end = 0;
        Index left = -1;
        Index right = -1;
        int axis = -1;
        double split = 0.0;
    };

    Index build(Index begin, Index end, int depth);

    std::vector<Vec2> points_;
    std::vector<Index> order_;
    std::vector<Node> nodes_;
    int leaf_size_;
};

/// Support-size rule 2 * C(m + d, d).
std::size_t stencil_size(int monomial_degree, int dimension);

/// Number of monomials of total degree <= m in d variables, C(m + d, d).
std::size_t monomial_count(int monomial_degree, int dimension);

/// Per-node neighbour lists of fixed length, nearest first, starting with the node itself.
struct StencilTable {
    std::size_t stencil_size = 0;
    int monomial_degree = -1;  // -1 when built from an explicit size
    int dimension = 2;
    std::vector<Index> indices;  // row-major, node_count * stencil_size

    std::size_t node_count() const noexcept {
        return stencil_size == 0 ? 0 : indices.size() / stencil_size;
    }
    std::span<const Index> operator[](std::size_t node) const {
        return {indices.data() + node * stencil_size, stencil_size};
    }
};

StencilTable build_stencils(const NodeSet& nodes, std::size_t n);

/// Stencils made of each node followed by its n - 1 nearest nodes drawn from
/// `candidates` (the node itself is skipped if it is a candidate).
StencilTable build_stencils_among(const NodeSet& nodes, std::size_t n, std::span<const Index> candidates);

/// Stencils sized from the support rule for degree m in two dimensions.
StencilTable build_stencils_for_degree(const NodeSet& nodes, int monomial_degree);

}  // namespace rbfimex
