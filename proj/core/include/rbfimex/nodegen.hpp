#pragma once

#include "rbfimex/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rbfimex {

enum class NodeKind : std::uint8_t {
    Interior = 0,
    NeumannBoundary = 1,
    DirichletBoundary = 2,
};

constexpr bool is_boundary(NodeKind k) noexcept { return k != NodeKind::Interior; }

/// Disk domain described by its signed distance: negative inside, zero on the circle.
struct DiskDomain {
    Vec2 center{0.0, 0.0};
    double radius = 1.0;

    double signed_distance(const Vec2& p) const { return (p - center).norm() - radius; }
    Vec2 outward_normal(const Vec2& p) const { return (p - center).normalized(); }
};

struct DomainSpec {
    Vec2 center{0.0, 0.0};
    double radius = 1.0;
    double spacing = 0.0106;
    std::uint64_t seed = 42;
    /// Candidates spawned around each front node per expansion.
    int fill_candidates = 15;

    DiskDomain domain() const { return {center, radius}; }
    /// Throws ConfigError on a non-positive radius or spacing, on a spacing that
    /// leaves fewer than two boundary nodes, or on fewer than 3 candidates.
    void validate() const;
};

/// Scattered discretization. Normals are zero for interior nodes.
struct NodeSet {
    std::vector<Vec2> positions;
    std::vector<NodeKind> kinds;
    std::vector<Vec2> normals;
    double spacing = 0.0;

    std::size_t size() const noexcept { return positions.size(); }
    bool empty() const noexcept { return positions.empty(); }
    std::size_t count(NodeKind k) const;

    void push_back(const Vec2& p, NodeKind k, const Vec2& n = Vec2::Zero());
};

/// Places round(2*pi*R/h) boundary nodes equally spaced in arc length, starting
/// at angle 0. Nodes with x <= 0 are Neumann, the rest Dirichlet.
NodeSet discretize_boundary(const DomainSpec& spec);

/// Advancing-front Poisson-disk fill seeded from the boundary nodes. A candidate
/// spawned at distance h from a front node is accepted iff it lies deeper than
/// h/2 inside the domain and no existing node is closer than h.
NodeSet fill_interior(const DomainSpec& spec, NodeSet boundary);

/// discretize_boundary followed by fill_interior.
NodeSet generate_nodes(const DomainSpec& spec);

}  // namespace rbfimex
