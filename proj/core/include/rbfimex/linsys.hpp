#pragma once

#include "rbfimex/geometry.hpp"
#include "rbfimex/nodegen.hpp"
#include "rbfimex/poisson.hpp"
#include "rbfimex/rbffd.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

namespace rbfimex {

/// Compressed sparse row matrix, square, rows in node order.
struct CsrMatrix {
    std::size_t rows = 0;
    std::vector<std::size_t> row_offsets{0};
    std::vector<Index> columns;
    std::vector<double> values;

    std::size_t nonzeros() const noexcept { return values.size(); }
    std::size_t row_nonzeros(std::size_t r) const { return row_offsets[r + 1] - row_offsets[r]; }

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> diagonal() const;
    Eigen::MatrixXd to_dense() const;
};

struct SparseSystem {
    CsrMatrix matrix;
    std::vector<double> rhs;

    std::size_t size() const noexcept { return matrix.rows; }
};

/// Collocation system: interior rows apply `laplacian` weights, Neumann rows
/// the normal-derivative weights, Dirichlet rows are identity rows. Every
/// interior node needs a Laplacian row and every Neumann node a normal row.
SparseSystem assemble(const NodeSet& nodes, const OperatorWeights& laplacian,
                      const OperatorWeights& normal_derivative, const BoundaryValueProblem& bvp);

struct SolveReport {
    std::vector<double> solution;
    std::size_t iterations = 0;
    double relative_residual = 0.0;  // ||b - A u|| / ||b||, recomputed from u
    bool converged = false;
    std::size_t restarts = 0;
};

/// Right Jacobi-preconditioned BiCGSTAB from a zero initial guess. Stops when
/// the true relative residual reaches `tolerance` or after `max_iterations`.
/// A rho breakdown restarts once from the current iterate; a second one
/// throws SolverBreakdownError.
SolveReport solve_bicgstab(const SparseSystem& sys, double tolerance, std::size_t max_iterations);

/// ||b - A u||_2 / ||b||_2 (or ||A u||_2 when b == 0).
double relative_residual(const SparseSystem& sys, std::span<const double> u);

}  // namespace rbfimex
