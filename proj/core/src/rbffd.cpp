#include "rbfimex/rbffd.hpp"

#include "rbfimex/errors.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <string>

namespace rbfimex {

std::size_t RbfConfig::monomial_count() const {
    return rbfimex::monomial_count(monomial_degree, dimension);
}

void RbfConfig::validate() const {
    if (phs_exponent < 3 || phs_exponent % 2 == 0)
        throw ConfigError("polyharmonic exponent must be odd and >= 3, got " + std::to_string(phs_exponent));
    if (monomial_degree < 0)
        throw ConfigError("monomial degree must be non-negative, got " + std::to_string(monomial_degree));
    if (dimension != 2)
        throw ConfigError("only two-dimensional operators are supported");
}

LinearOperator LinearOperator::directional_derivative(const Vec2& direction) {
    if (!(std::abs(direction.norm() - 1.0) <= 1e-12))
        throw ConfigError("directional derivative needs a unit direction");
    return LinearOperator(Kind::DirectionalDerivative, direction);
}

std::vector<MonomialExponent> monomial_basis(int degree) {
    std::vector<MonomialExponent> basis;
    for (int total = 0; total <= degree; ++total)
        for (int a = total; a >= 0; --a) basis.push_back({a, total - a});
    return basis;
}

namespace {

double ipow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// L applied to x^a y^b, evaluated at the local origin. Only the degree-matching
// monomials survive: x^2, y^2 for the Laplacian, x, y for first derivatives.
double operator_on_monomial_at_origin(const LinearOperator& op, const MonomialExponent& e) {
    if (op.kind() == LinearOperator::Kind::Laplacian) {
        return (e[0] == 2 && e[1] == 0) || (e[0] == 0 && e[1] == 2) ? 2.0 : 0.0;
    }
    if (e[0] == 1 && e[1] == 0) return op.direction().x();
    if (e[0] == 0 && e[1] == 1) return op.direction().y();
    return 0.0;
}

// L applied to |x - q|^k, evaluated at the local origin.
double operator_on_phs_at_origin(const LinearOperator& op, const Vec2& q, int k) {
    const double r = q.norm();
    if (r == 0.0) return 0.0;
    const double rk2 = ipow(r, k - 2);
    if (op.kind() == LinearOperator::Kind::Laplacian) return static_cast<double>(k * k) * rk2;
    return -static_cast<double>(k) * rk2 * q.dot(op.direction());
}

void assemble_local(const Vec2& center, std::span<const Vec2> points, const LinearOperator& op,
                    const RbfConfig& cfg, const std::vector<MonomialExponent>& basis,
                    std::vector<Vec2>& local, LocalSystem& sys) {
    const std::size_t n = points.size();
    const std::size_t s = basis.size();
    const auto dim = static_cast<Eigen::Index>(n + s);

    double scale = 0.0;
    for (const Vec2& p : points) scale = std::max(scale, (p - center).norm());
    if (scale == 0.0) scale = 1.0;
    local.resize(n);
    for (std::size_t i = 0; i < n; ++i) local[i] = (points[i] - center) / scale;

    sys.matrix.resize(dim, dim);
    sys.rhs.resize(dim);
    sys.scale = scale;
    sys.stencil_size = n;
    auto& A = sys.matrix;
    const int k = cfg.phs_exponent;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        A(ii, ii) = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            const double v = ipow((local[i] - local[j]).norm(), k);
            A(ii, jj) = v;
            A(jj, ii) = v;
        }
        for (std::size_t j = 0; j < s; ++j) {
            const auto jj = static_cast<Eigen::Index>(n + j);
            const double v = ipow(local[i].x(), basis[j][0]) * ipow(local[i].y(), basis[j][1]);
            A(ii, jj) = v;
            A(jj, ii) = v;
        }
        sys.rhs(ii) = operator_on_phs_at_origin(op, local[i], k);
    }
    A.bottomRightCorner(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)).setZero();
    for (std::size_t j = 0; j < s; ++j)
        sys.rhs(static_cast<Eigen::Index>(n + j)) = operator_on_monomial_at_origin(op, basis[j]);
}

// Solves with a column-pivoted QR. The system may be rank deficient yet
// consistent (e.g. a monomial vanishing on every stencil point); that still
// determines w, so only an inconsistent or non-finite solve is rejected.
Eigen::VectorXd solve_local(Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr, const LocalSystem& sys,
                            const LinearOperator& op, std::size_t node) {
    qr.compute(sys.matrix);
    Eigen::VectorXd sol = qr.solve(sys.rhs);
    if (!sol.allFinite()) throw StencilDegeneracyError(node, "non-finite weights");

    const double lhs_scale = sys.matrix.cwiseAbs().rowwise().sum().maxCoeff() * sol.cwiseAbs().maxCoeff() +
                             sys.rhs.cwiseAbs().maxCoeff();
    const double residual = (sys.matrix * sol - sys.rhs).cwiseAbs().maxCoeff();
    if (residual > 1e-8 * std::max(lhs_scale, 1e-300))
        throw StencilDegeneracyError(node, "augmented system is singular (rank " +
                                               std::to_string(qr.rank()) + " of " +
                                               std::to_string(sys.matrix.rows()) + ")");

    Eigen::VectorXd w = sol.head(static_cast<Eigen::Index>(sys.stencil_size));
    w /= ipow(sys.scale, op.order());
    return w;
}

template <class OpForRow>
OperatorWeights compute_rows(const NodeSet& nodes, const StencilTable& stencils, const RbfConfig& cfg,
                             std::span<const Index> rows, OpForRow&& op_for_row) {
    cfg.validate();
    if (stencils.node_count() != nodes.size())
        throw ConfigError("stencil table has " + std::to_string(stencils.node_count()) +
                          " rows for " + std::to_string(nodes.size()) + " nodes");
    const std::size_t n = stencils.stencil_size;
    const auto basis = monomial_basis(cfg.monomial_degree);

    OperatorWeights out;
    out.rows.assign(rows.begin(), rows.end());
    out.stencil_size = n;
    out.config = cfg;
    out.neighbors.resize(rows.size() * n);
    out.weights.resize(rows.size() * n);

    const auto dim = static_cast<Eigen::Index>(n + basis.size());
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(dim, dim);
    LocalSystem sys;
    std::vector<Vec2> points(n);
    std::vector<Vec2> local;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto node = static_cast<std::size_t>(rows[r]);
        if (node >= nodes.size()) throw ConfigError("weight row refers to node " + std::to_string(node) + " out of range");
        const auto stencil = stencils[node];
        for (std::size_t j = 0; j < n; ++j) points[j] = nodes.positions[stencil[j]];
        const LinearOperator op = op_for_row(node);
        assemble_local(nodes.positions[node], points, op, cfg, basis, local, sys);
        const Eigen::VectorXd w = solve_local(qr, sys, op, node);
        std::copy(stencil.begin(), stencil.end(), out.neighbors.begin() + static_cast<std::ptrdiff_t>(r * n));
        std::copy(w.data(), w.data() + n, out.weights.begin() + static_cast<std::ptrdiff_t>(r * n));
    }
    return out;
}

}  // namespace

LocalSystem local_system(const Vec2& center, std::span<const Vec2> stencil_points,
                         const LinearOperator& op, const RbfConfig& cfg) {
    cfg.validate();
    if (stencil_points.empty()) throw ConfigError("empty stencil");
    if ((stencil_points.front() - center).norm() != 0.0)
        throw ConfigError("first stencil point must be the stencil centre");
    LocalSystem sys;
    std::vector<Vec2> local;
    assemble_local(center, stencil_points, op, cfg, monomial_basis(cfg.monomial_degree), local, sys);
    return sys;
}

Eigen::VectorXd solve_local_weights(const LocalSystem& sys, const LinearOperator& op, std::size_t node) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
    return solve_local(qr, sys, op, node);
}

std::vector<double> OperatorWeights::apply(std::span<const double> u) const {
    std::vector<double> out(rows.size(), 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto nb = neighbors_of(r);
        const auto w = weights_of(r);
        double acc = 0.0;
        for (std::size_t j = 0; j < stencil_size; ++j) acc += w[j] * u[static_cast<std::size_t>(nb[j])];
        out[r] = acc;
    }
    return out;
}

std::vector<Index> nodes_of_kind(const NodeSet& nodes, NodeKind kind) {
    std::vector<Index> idx;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes.kinds[i] == kind) idx.push_back(static_cast<Index>(i));
    return idx;
}

OperatorWeights compute_weights(const NodeSet& nodes, const StencilTable& stencils,
                                const LinearOperator& op, const RbfConfig& cfg,
                                std::span<const Index> rows) {
    return compute_rows(nodes, stencils, cfg, rows, [&](std::size_t) { return op; });
}

OperatorWeights compute_weights(const NodeSet& nodes, const StencilTable& stencils,
                                const LinearOperator& op, const RbfConfig& cfg) {
    std::vector<Index> all(nodes.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Index>(i);
    return compute_weights(nodes, stencils, op, cfg, all);
}

OperatorWeights compute_normal_derivative_weights(const NodeSet& nodes, const StencilTable& stencils,
                                                  const RbfConfig& cfg, std::span<const Index> rows) {
    return compute_rows(nodes, stencils, cfg, rows, [&](std::size_t node) {
        if (!is_boundary(nodes.kinds[node]))
            throw ConfigError("normal derivative requested at interior node " + std::to_string(node));
        return LinearOperator::directional_derivative(nodes.normals[node]);
    });
}

}  // namespace rbfimex
