#pragma once

#include "rbfimex/nodegen.hpp"
#include "rbfimex/poisson.hpp"
#include "rbfimex/rbffd.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace rbfimex {

/// Implicit solution together with the two pointwise error fields. The
/// explicit indicator is only defined at interior nodes; boundary entries hold 0.
struct IndicatorField {
    std::vector<double> u_im;
    std::vector<double> eps_imex;
    std::vector<double> eps_an;
    int m_lo = 2;
    int m_hi = 4;
};

/// a_ex = L_hi u_im, scattered to a node-indexed vector. Nodes without a
/// Laplacian row (the boundary) get 0.
std::vector<double> explicit_reconstruct(std::span<const double> u_im, const OperatorWeights& hi_laplacian);

/// eps_imex = |a_ex - f_lap| at interior nodes, eps_an = |u_im - u_exact| everywhere.
IndicatorField indicator(std::span<const double> u_im, std::span<const double> a_ex, const NodeSet& nodes,
                         const BoundaryValueProblem& bvp);

/// Gaussian-source convenience overload.
IndicatorField indicator(std::span<const double> u_im, std::span<const double> a_ex, const NodeSet& nodes,
                         const SourceParams& p);

/// Index of the largest value among nodes accepted by the kind filter; ties
/// resolve to the smaller index. Empty when no node qualifies.
std::optional<std::size_t> argmax(std::span<const double> field, const NodeSet& nodes, bool interior_only);

}  // namespace rbfimex
