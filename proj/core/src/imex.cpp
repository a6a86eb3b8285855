#include "rbfimex/imex.hpp"

#include "rbfimex/errors.hpp"

#include <cmath>
#include <string>

namespace rbfimex {

std::vector<double> explicit_reconstruct(std::span<const double> u_im, const OperatorWeights& hi_laplacian) {
    std::vector<double> a_ex(u_im.size(), 0.0);
    const auto rows = hi_laplacian.apply(u_im);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto node = static_cast<std::size_t>(hi_laplacian.rows[r]);
        if (node >= a_ex.size()) throw ConfigError("Laplacian row beyond solution length");
        a_ex[node] = rows[r];
    }
    return a_ex;
}

IndicatorField indicator(std::span<const double> u_im, std::span<const double> a_ex, const NodeSet& nodes,
                         const BoundaryValueProblem& bvp) {
    const std::size_t n = nodes.size();
    if (u_im.size() != n || a_ex.size() != n)
        throw ConfigError("indicator inputs must have one value per node (" + std::to_string(n) + ")");

    IndicatorField field;
    field.u_im.assign(u_im.begin(), u_im.end());
    field.eps_imex.assign(n, 0.0);
    field.eps_an.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& x = nodes.positions[i];
        field.eps_an[i] = std::abs(u_im[i] - bvp.exact(x));
        if (nodes.kinds[i] == NodeKind::Interior) field.eps_imex[i] = std::abs(a_ex[i] - bvp.laplacian(x));
    }
    return field;
}

IndicatorField indicator(std::span<const double> u_im, std::span<const double> a_ex, const NodeSet& nodes,
                         const SourceParams& p) {
    return indicator(u_im, a_ex, nodes, gaussian_source_problem(p));
}

std::optional<std::size_t> argmax(std::span<const double> field, const NodeSet& nodes, bool interior_only) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (interior_only && nodes.kinds[i] != NodeKind::Interior) continue;
        if (!best || field[i] > field[*best]) best = i;
    }
    return best;
}

}  // namespace rbfimex
