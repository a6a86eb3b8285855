#include "rbfimex/poisson.hpp"

#include "rbfimex/errors.hpp"

#include <cmath>
#include <string>

namespace rbfimex {

void SourceParams::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("source strength alpha must be positive");
    if (!position.allFinite()) throw ConfigError("source position must be finite");
}

NeumannMode parse_neumann_mode(std::string_view text) {
    if (text == "gradient") return NeumannMode::GradientConsistent;
    if (text == "literal") return NeumannMode::PositionDotNormal;
    throw ConfigError("unknown neumann mode '" + std::string(text) + "' (expected literal|gradient)");
}

std::string_view to_string(NeumannMode mode) {
    return mode == NeumannMode::GradientConsistent ? "gradient" : "literal";
}

double f_dir(const Vec2& x, const SourceParams& p) {
    return std::exp(-p.alpha * (x - p.position).squaredNorm());
}

double f_lap(const Vec2& x, const SourceParams& p) {
    const double r2 = (x - p.position).squaredNorm();
    return 4.0 * (p.alpha * p.alpha * r2 - p.alpha) * std::exp(-p.alpha * r2);
}

double f_neu(const Vec2& x, const Vec2& normal, const SourceParams& p, NeumannMode mode) {
    const double g = -2.0 * p.alpha * f_dir(x, p);
    if (mode == NeumannMode::PositionDotNormal) return g * x.dot(normal);
    return g * (x - p.position).dot(normal);
}

BoundaryValueProblem gaussian_source_problem(const SourceParams& p, NeumannMode mode) {
    p.validate();
    BoundaryValueProblem bvp;
    bvp.laplacian = [p](const Vec2& x) { return f_lap(x, p); };
    bvp.neumann = [p, mode](const Vec2& x, const Vec2& n) { return f_neu(x, n, p, mode); };
    bvp.dirichlet = [p](const Vec2& x) { return f_dir(x, p); };
    bvp.exact = bvp.dirichlet;
    return bvp;
}

}  // namespace rbfimex
