#include "rbfimex/sampling.hpp"

#include "rbfimex/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rbfimex {

ShepardInterpolator::ShepardInterpolator(std::span<const Vec2> points, std::size_t k, double power)
    : tree_(points), k_(k), power_(power) {
    if (points.empty()) throw ConfigError("Shepard interpolation needs at least one data site");
    if (k == 0) throw ConfigError("Shepard interpolation needs k >= 1");
    if (k > points.size()) throw ConfigError("Shepard k exceeds the number of data sites");
    if (!(power > 0.0)) throw ConfigError("Shepard power must be positive");
}

double ShepardInterpolator::operator()(const Vec2& query, std::span<const double> values) const {
    tree_.nearest(query, k_, scratch_);
    double num = 0.0;
    double den = 0.0;
    for (const auto& [d2, idx] : scratch_) {
        const double d = std::sqrt(d2);
        if (d < 1e-12) return values[static_cast<std::size_t>(idx)];
        const double w = std::pow(d, -power_);
        num += w * values[static_cast<std::size_t>(idx)];
        den += w;
    }
    return num / den;
}

double shepard(const Vec2& query, const NodeSet& nodes, std::span<const double> values,
               std::size_t k, double power) {
    return ShepardInterpolator(nodes.positions, k, power)(query, values);
}

std::vector<double> normalized(std::span<const double> values) {
    std::vector<double> out(values.begin(), values.end());
    if (out.empty()) return out;
    const double peak = *std::max_element(out.begin(), out.end());
    if (peak > 0.0)
        for (double& v : out) v /= peak;
    return out;
}

LineSample sample_line(const NodeSet& nodes, const IndicatorField& fields, const DiskDomain& domain,
                       std::size_t count, std::size_t k, double power) {
    if (count < 2) throw ConfigError("line sampling needs at least 2 points");
    if (fields.u_im.size() != nodes.size() || fields.eps_an.size() != nodes.size() ||
        fields.eps_imex.size() != nodes.size())
        throw ConfigError("field lengths do not match the node set");

    // |(t, t) - c|^2 = R^2  =>  2t^2 - 2t(cx + cy) + |c|^2 - R^2 = 0
    const double b = domain.center.x() + domain.center.y();
    const double disc = b * b - 2.0 * (domain.center.squaredNorm() - domain.radius * domain.radius);
    if (disc < 0.0) throw ConfigError("the line y = x misses the domain");
    const double t0 = 0.5 * (b - std::sqrt(disc));
    const double t1 = 0.5 * (b + std::sqrt(disc));

    const ShepardInterpolator interp(nodes.positions, k, power);
    LineSample line;
    line.neighbors = k;
    line.t.resize(count);
    line.positions.resize(count);
    line.u_im.resize(count);
    line.eps_an.resize(count);
    line.eps_imex.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = i + 1 == count ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count - 1);
        const Vec2 p(t, t);
        line.t[i] = t;
        line.positions[i] = p;
        line.u_im[i] = interp(p, fields.u_im);
        line.eps_an[i] = interp(p, fields.eps_an);
        line.eps_imex[i] = interp(p, fields.eps_imex);
    }
    line.u_im_norm = normalized(line.u_im);
    line.eps_an_norm = normalized(line.eps_an);
    line.eps_imex_norm = normalized(line.eps_imex);
    return line;
}

}  // namespace rbfimex
