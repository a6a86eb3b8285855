#pragma once

#include "rbfimex/geometry.hpp"

#include <functional>
#include <string_view>

namespace rbfimex {

/// Gaussian source exp(-alpha |x - x_s|^2).
struct SourceParams {
    Vec2 position{0.5, 0.5};
    double alpha = 1000.0;

    void validate() const;
};

enum class NeumannMode {
    /// grad(f_dir) . n, consistent with the analytic solution.
    GradientConsistent,
    /// -2 alpha exp(-alpha |x - x_s|^2) (x . n), the source-independent variant.
    PositionDotNormal,
};

NeumannMode parse_neumann_mode(std::string_view text);
std::string_view to_string(NeumannMode mode);

/// Analytic solution, also the Dirichlet data.
double f_dir(const Vec2& x, const SourceParams& p);
/// Analytic Laplacian of f_dir: 4 (alpha^2 r^2 - alpha) exp(-alpha r^2).
double f_lap(const Vec2& x, const SourceParams& p);
/// Neumann data du/dn at x for the given unit normal.
double f_neu(const Vec2& x, const Vec2& normal, const SourceParams& p,
             NeumannMode mode = NeumannMode::GradientConsistent);

/// Forcing and boundary data of a mixed Poisson problem
///   lap u = laplacian(x) inside, du/dn = neumann(x, n), u = dirichlet(x),
/// together with the exact solution where one is known.
struct BoundaryValueProblem {
    std::function<double(const Vec2&)> laplacian;
    std::function<double(const Vec2&, const Vec2&)> neumann;
    std::function<double(const Vec2&)> dirichlet;
    std::function<double(const Vec2&)> exact;
};

BoundaryValueProblem gaussian_source_problem(const SourceParams& p,
                                             NeumannMode mode = NeumannMode::GradientConsistent);

}  // namespace rbfimex
