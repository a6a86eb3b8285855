#include "rbfimex/linsys.hpp"

#include "rbfimex/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace rbfimex {

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
            acc += values[k] * x[static_cast<std::size_t>(columns[k])];
        y[r] = acc;
    }
}

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
            if (static_cast<std::size_t>(columns[k]) == r) d[r] += values[k];
    return d;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
    const auto n = static_cast<Eigen::Index>(rows);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
            dense(static_cast<Eigen::Index>(r), columns[k]) += values[k];
    return dense;
}

namespace {

// Maps node index -> row of `w`, or -1.
std::vector<Index> row_lookup(const OperatorWeights& w, std::size_t node_count, const char* what) {
    std::vector<Index> lookup(node_count, -1);
    for (std::size_t r = 0; r < w.rows.size(); ++r) {
        const auto node = static_cast<std::size_t>(w.rows[r]);
        if (node >= node_count)
            throw ConfigError(std::string(what) + " weights refer to node " + std::to_string(node) +
                              " beyond the node set");
        lookup[node] = static_cast<Index>(r);
    }
    return lookup;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

SparseSystem assemble(const NodeSet& nodes, const OperatorWeights& laplacian,
                      const OperatorWeights& normal_derivative, const BoundaryValueProblem& bvp) {
    const std::size_t n = nodes.size();
    const auto lap_row = row_lookup(laplacian, n, "Laplacian");
    const auto neu_row = row_lookup(normal_derivative, n, "normal-derivative");

    SparseSystem sys;
    auto& A = sys.matrix;
    A.rows = n;
    A.row_offsets.assign(1, 0);
    A.row_offsets.reserve(n + 1);
    A.columns.reserve(n * laplacian.stencil_size);
    A.values.reserve(n * laplacian.stencil_size);
    sys.rhs.resize(n);

    auto append_row = [&A](std::span<const Index> cols, std::span<const double> vals) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (vals[j] == 0.0) continue;
            A.columns.push_back(cols[j]);
            A.values.push_back(vals[j]);
        }
        A.row_offsets.push_back(A.values.size());
    };

    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& x = nodes.positions[i];
        switch (nodes.kinds[i]) {
        case NodeKind::Interior: {
            if (lap_row[i] < 0)
                throw ConfigError("no Laplacian weights for interior node " + std::to_string(i));
            const auto r = static_cast<std::size_t>(lap_row[i]);
            append_row(laplacian.neighbors_of(r), laplacian.weights_of(r));
            sys.rhs[i] = bvp.laplacian(x);
            break;
        }
        case NodeKind::NeumannBoundary: {
            if (neu_row[i] < 0)
                throw ConfigError("no normal-derivative weights for Neumann node " + std::to_string(i));
            const auto r = static_cast<std::size_t>(neu_row[i]);
            append_row(normal_derivative.neighbors_of(r), normal_derivative.weights_of(r));
            sys.rhs[i] = bvp.neumann(x, nodes.normals[i]);
            break;
        }
        case NodeKind::DirichletBoundary: {
            const Index col = static_cast<Index>(i);
            const double one = 1.0;
            append_row({&col, 1}, {&one, 1});
            sys.rhs[i] = bvp.dirichlet(x);
            break;
        }
        }
    }
    return sys;
}

double relative_residual(const SparseSystem& sys, std::span<const double> u) {
    std::vector<double> r(sys.size());
    sys.matrix.multiply(u, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = sys.rhs[i] - r[i];
    const double bnorm = norm2(sys.rhs);
    return bnorm > 0.0 ? norm2(r) / bnorm : norm2(r);
}

SolveReport solve_bicgstab(const SparseSystem& sys, double tolerance, std::size_t max_iterations) {
    const std::size_t n = sys.size();
    if (n == 0) throw ConfigError("cannot solve an empty system");
    if (!(tolerance > 0.0)) throw ConfigError("solver tolerance must be positive");

    const auto& A = sys.matrix;
    std::vector<double> inv_diag = A.diagonal();
    for (double& d : inv_diag) d = d != 0.0 ? 1.0 / d : 1.0;

    SolveReport rep;
    rep.solution.assign(n, 0.0);
    auto& x = rep.solution;

    const double bnorm = norm2(sys.rhs);
    if (bnorm == 0.0) {
        rep.converged = true;
        return rep;
    }

    std::vector<double> r(sys.rhs), r_hat(n), p(n, 0.0), v(n, 0.0), s(n), t(n), p_hat(n), s_hat(n), ax(n);
    double rho_old = 1.0, alpha = 1.0, omega = 1.0;

    auto reset = [&] {
        A.multiply(x, ax);
        for (std::size_t i = 0; i < n; ++i) r[i] = sys.rhs[i] - ax[i];
        r_hat = r;
        std::fill(p.begin(), p.end(), 0.0);
        std::fill(v.begin(), v.end(), 0.0);
        rho_old = alpha = omega = 1.0;
    };
    auto true_residual = [&] { return relative_residual(sys, x); };

    reset();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double res = norm2(r) / bnorm;
    while (res > tolerance && rep.iterations < max_iterations) {
        const double rho = dot(r_hat, r);
        if (std::abs(rho) <= eps * eps * norm2(r_hat) * norm2(r) || omega == 0.0) {
            if (rep.restarts > 0)
                throw SolverBreakdownError("BiCGSTAB breakdown after restart at iteration " +
                                           std::to_string(rep.iterations));
            ++rep.restarts;
            reset();
            continue;
        }
        ++rep.iterations;
        const double beta = (rho / rho_old) * (alpha / omega);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
            p_hat[i] = inv_diag[i] * p[i];
        }
        A.multiply(p_hat, v);
        const double rv = dot(r_hat, v);
        if (rv == 0.0) {
            rho_old = rho;
            omega = 0.0;  // forces the breakdown branch next pass
            continue;
        }
        alpha = rho / rv;
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];

        if (norm2(s) / bnorm <= tolerance) {
            for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p_hat[i];
            res = true_residual();
            // Recursive and true residuals can drift apart; resume from the true one.
            if (res > tolerance) reset();
            continue;
        }

        for (std::size_t i = 0; i < n; ++i) s_hat[i] = inv_diag[i] * s[i];
        A.multiply(s_hat, t);
        const double tt = dot(t, t);
        omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p_hat[i] + omega * s_hat[i];
            r[i] = s[i] - omega * t[i];
        }
        rho_old = rho;
        res = norm2(r) / bnorm;
        if (res <= tolerance) {
            res = true_residual();
            if (res > tolerance) reset();
        }
    }

    rep.relative_residual = true_residual();
    rep.converged = rep.relative_residual <= tolerance;
    return rep;
}

}  // namespace rbfimex
