#include "rbfimex/pipeline.hpp"

#include "rbfimex/errors.hpp"
#include "rbfimex/io.hpp"
#include "rbfimex/rbffd.hpp"
#include "rbfimex/stencil.hpp"

#include <json.hpp>

#include <fstream>

namespace rbfimex {

void Timings::add(const std::string& name, double seconds) {
    for (auto& [n, s] : entries_) {
        if (n == name) {
            s += seconds;
            return;
        }
    }
    entries_.emplace_back(name, seconds);
}

double Timings::get(const std::string& name) const {
    for (const auto& [n, s] : entries_)
        if (n == name) return s;
    return 0.0;
}

double Timings::total() const {
    double t = 0.0;
    for (const auto& e : entries_) t += e.second;
    return t;
}

namespace {

template <class F>
decltype(auto) timed(Timings* t, const std::string& name, F&& f) {
    if (t) return t->time(name, std::forward<F>(f));
    return f();
}

template <class F>
decltype(auto) stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

nlohmann::json peak_json(const FieldPeak& p) {
    return {{"node", p.node}, {"x", p.position.x()}, {"y", p.position.y()}, {"value", p.value}};
}

}  // namespace

ImplicitSolution solve_implicit(const NodeSet& nodes, const ImplicitOptions& opt,
                                const BoundaryValueProblem& bvp, Timings* timings) {
    const RbfConfig cfg{opt.phs_exponent, opt.monomial_degree, 2};
    cfg.validate();
    const auto interior = nodes_of_kind(nodes, NodeKind::Interior);
    const auto neumann = nodes_of_kind(nodes, NodeKind::NeumannBoundary);
    StencilTable stencils, boundary_stencils;
    timed(timings, "stencils_lo", [&] {
        stencils = build_stencils_for_degree(nodes, opt.monomial_degree);
        if (opt.neumann_stencil == NeumannStencil::InteriorNeighbors && !neumann.empty()) {
            boundary_stencils = build_stencils_among(nodes, stencils.stencil_size, interior);
            boundary_stencils.monomial_degree = opt.monomial_degree;
        }
    });
    const StencilTable& neumann_stencils = boundary_stencils.stencil_size != 0 ? boundary_stencils : stencils;

    ImplicitSolution out;
    timed(timings, "weights_lo", [&] {
        out.laplacian = compute_weights(nodes, stencils, LinearOperator::laplacian(), cfg, interior);
        out.normal_derivative = compute_normal_derivative_weights(nodes, neumann_stencils, cfg, neumann);
    });
    out.system = timed(timings, "assemble", [&] { return assemble(nodes, out.laplacian, out.normal_derivative, bvp); });
    const std::size_t max_iter = opt.max_iterations != 0 ? opt.max_iterations : 10 * nodes.size();
    out.report = timed(timings, "solve", [&] { return solve_bicgstab(out.system, opt.tolerance, max_iter); });
    return out;
}

OperatorWeights explicit_laplacian(const NodeSet& nodes, int monomial_degree, int phs_exponent, Timings* timings) {
    const RbfConfig cfg{phs_exponent, monomial_degree, 2};
    cfg.validate();
    const auto stencils = timed(timings, "stencils_hi", [&] { return build_stencils_for_degree(nodes, monomial_degree); });
    return timed(timings, "weights_hi", [&] {
        return compute_weights(nodes, stencils, LinearOperator::laplacian(), cfg,
                               nodes_of_kind(nodes, NodeKind::Interior));
    });
}

IndicatorField evaluate_indicator(const NodeSet& nodes, std::span<const double> u_im, int m_lo, int m_hi,
                                  int phs_exponent, const BoundaryValueProblem& bvp, Timings* timings) {
    if (m_hi <= m_lo) throw ConfigError("m_hi must exceed m_lo");
    const auto hi = explicit_laplacian(nodes, m_hi, phs_exponent, timings);
    return timed(timings, "reconstruct", [&] {
        const auto a_ex = explicit_reconstruct(u_im, hi);
        IndicatorField field = indicator(u_im, a_ex, nodes, bvp);
        field.m_lo = m_lo;
        field.m_hi = m_hi;
        return field;
    });
}

FieldPeak find_peak(std::span<const double> field, const NodeSet& nodes, bool interior_only) {
    FieldPeak peak;
    if (const auto i = argmax(field, nodes, interior_only)) {
        peak.node = *i;
        peak.position = nodes.positions[*i];
        peak.value = field[*i];
    }
    return peak;
}

PipelineResult run_pipeline(const RunConfig& cfg, bool write_outputs) {
    stage("config", [&] { cfg.validate(); });
    const auto bvp = gaussian_source_problem(cfg.source, cfg.neumann_mode);

    PipelineResult res;
    auto& t = res.timings;
    res.nodes = stage("generate", [&] { return t.time("generate", [&] { return generate_nodes(cfg.domain); }); });

    const ImplicitOptions opt{cfg.m_lo, cfg.neumann_stencil, cfg.phs_exponent, cfg.tolerance, cfg.max_iterations};
    res.implicit = stage("solve", [&] { return solve_implicit(res.nodes, opt, bvp, &t); });
    res.field = stage("indicate", [&] {
        return evaluate_indicator(res.nodes, res.implicit.report.solution, cfg.m_lo, cfg.m_hi, cfg.phs_exponent, bvp, &t);
    });
    res.line = stage("sample", [&] {
        return t.time("sample", [&] {
            return sample_line(res.nodes, res.field, cfg.domain.domain(), cfg.sample_count, cfg.sample_k,
                               cfg.sample_power);
        });
    });
    res.peak_eps_an = find_peak(res.field.eps_an, res.nodes, false);
    res.peak_eps_imex = find_peak(res.field.eps_imex, res.nodes, true);

    if (write_outputs) {
        stage("write", [&] {
            t.time("write", [&] {
                std::filesystem::create_directories(cfg.output_dir);
                io::write_nodes(cfg.output_dir / "nodes.csv", res.nodes);
                io::write_implicit(cfg.output_dir / "implicit.csv", res.nodes, res.implicit.report.solution);
                io::write_solution(cfg.output_dir / "solution.csv", res.nodes, res.field);
                io::write_line(cfg.output_dir / "line.csv", res.line);
            });
            std::ofstream os(cfg.output_dir / "report.json", std::ios::binary);
            if (!os) throw std::runtime_error("cannot write report.json");
            os << pipeline_report_json(cfg, res) << '\n';
        });
    }
    return res;
}

std::string pipeline_report_json(const RunConfig& cfg, const PipelineResult& r) {
    nlohmann::ordered_json timings = nlohmann::ordered_json::object();
    for (const auto& [name, secs] : r.timings.entries()) timings[name] = secs;
    timings["total"] = r.timings.total();

    const auto& rep = r.implicit.report;
    nlohmann::ordered_json j;
    j["node_count"] = r.nodes.size();
    j["interior_count"] = r.nodes.count(NodeKind::Interior);
    j["neumann_count"] = r.nodes.count(NodeKind::NeumannBoundary);
    j["dirichlet_count"] = r.nodes.count(NodeKind::DirichletBoundary);
    j["config"] = {
        {"h", cfg.domain.spacing},   {"radius", cfg.domain.radius},       {"seed", cfg.domain.seed},
        {"alpha", cfg.source.alpha}, {"source_x", cfg.source.position.x()}, {"source_y", cfg.source.position.y()},
        {"m_lo", cfg.m_lo},          {"m_hi", cfg.m_hi},                  {"phs_exponent", cfg.phs_exponent},
        {"neumann_mode", std::string(to_string(cfg.neumann_mode))},
        {"neumann_stencil", std::string(to_string(cfg.neumann_stencil))},
    };
    j["solver"] = {
        {"method", "bicgstab-jacobi"},
        {"converged", rep.converged},
        {"iterations", rep.iterations},
        {"restarts", rep.restarts},
        {"relative_residual", rep.relative_residual},
        {"tolerance", cfg.tolerance},
        {"max_iterations", cfg.effective_max_iterations(r.nodes.size())},
    };
    j["argmax"] = {{"eps_an", peak_json(r.peak_eps_an)}, {"eps_imex", peak_json(r.peak_eps_imex)}};
    j["timings_s"] = timings;
    return j.dump(2);
}

}  // namespace rbfimex
