#pragma once

#include "rbfimex/geometry.hpp"
#include "rbfimex/nodegen.hpp"
#include "rbfimex/stencil.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace rbfimex {

/// Polyharmonic spline r^k augmented with all monomials of total degree <= m.
struct RbfConfig {
    int phs_exponent = 3;
    int monomial_degree = 2;
    int dimension = 2;

    std::size_t monomial_count() const;
    /// k odd and >= 3, m >= 0, d == 2.
    void validate() const;
};

class LinearOperator {
public:
    enum class Kind { Laplacian, DirectionalDerivative };

    static LinearOperator laplacian() { return LinearOperator(Kind::Laplacian, Vec2::Zero()); }
    /// Throws ConfigError unless |direction| == 1 within 1e-12.
    static LinearOperator directional_derivative(const Vec2& direction);

    Kind kind() const noexcept { return kind_; }
    const Vec2& direction() const noexcept { return direction_; }
    /// Differential order: 2 for the Laplacian, 1 for a directional derivative.
    int order() const noexcept { return kind_ == Kind::Laplacian ? 2 : 1; }

private:
    LinearOperator(Kind k, const Vec2& dir) : kind_(k), direction_(dir) {}

    Kind kind_;
    Vec2 direction_;
};

using MonomialExponent = std::array<int, 2>;

/// Exponents (a, b) of x^a y^b, graded by total degree, x power descending within a degree.
std::vector<MonomialExponent> monomial_basis(int degree);

/// The augmented symmetric system [Theta P; P^T 0] [w; lambda] = [l_theta; l_p]
/// in shifted and scaled local coordinates.
struct LocalSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    double scale = 1.0;  // largest centre-to-neighbour distance
    std::size_t stencil_size = 0;
};

/// Builds the local system. The first stencil point must be the centre.
LocalSystem local_system(const Vec2& center, std::span<const Vec2> stencil_points,
                         const LinearOperator& op, const RbfConfig& cfg);

/// Solves a local system and maps the weights back to physical coordinates.
/// Throws StencilDegeneracyError(node) when the system has no solution.
Eigen::VectorXd solve_local_weights(const LocalSystem& sys, const LinearOperator& op, std::size_t node);

/// Differentiation weights for a subset of nodes ("rows"), each over its own stencil.
struct OperatorWeights {
    std::vector<Index> rows;       // node index of each row
    std::size_t stencil_size = 0;
    std::vector<Index> neighbors;  // rows.size() * stencil_size
    std::vector<double> weights;   // rows.size() * stencil_size
    RbfConfig config;

    std::size_t row_count() const noexcept { return rows.size(); }
    std::span<const Index> neighbors_of(std::size_t row) const {
        return {neighbors.data() + row * stencil_size, stencil_size};
    }
    std::span<const double> weights_of(std::size_t row) const {
        return {weights.data() + row * stencil_size, stencil_size};
    }
    /// Applies the operator to nodal values: out[r] = sum_j w_rj u[neighbor_rj].
    std::vector<double> apply(std::span<const double> u) const;
};

/// Weights of `op` at every node.
OperatorWeights compute_weights(const NodeSet& nodes, const StencilTable& stencils,
                                const LinearOperator& op, const RbfConfig& cfg);

/// Weights of `op` at the listed nodes only.
OperatorWeights compute_weights(const NodeSet& nodes, const StencilTable& stencils,
                                const LinearOperator& op, const RbfConfig& cfg,
                                std::span<const Index> rows);

/// Outward normal-derivative weights at the listed (boundary) nodes, each row
/// using that node's own normal.
OperatorWeights compute_normal_derivative_weights(const NodeSet& nodes, const StencilTable& stencils,
                                                  const RbfConfig& cfg, std::span<const Index> rows);

/// Indices of all nodes of the given kind, ascending.
std::vector<Index> nodes_of_kind(const NodeSet& nodes, NodeKind kind);

}  // namespace rbfimex
