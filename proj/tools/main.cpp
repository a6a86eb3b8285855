// rbfimex: scattered-node Poisson solve with an implicit/explicit error indicator.
//
//   rbfimex run      --config run.cfg --out out/
//   rbfimex generate --out out/            -> nodes.csv
//   rbfimex solve    --out out/            -> implicit.csv, solve.json
//   rbfimex indicate --out out/ --m-hi 6   -> solution.csv
//   rbfimex sample   --out out/            -> line.csv

#include "rbfimex/config.hpp"
#include "rbfimex/errors.hpp"
#include "rbfimex/io.hpp"
#include "rbfimex/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace rbfimex;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::string in_dir;
    std::optional<int> m_hi;
    std::optional<double> alpha;
    std::optional<double> h;
    std::optional<std::uint64_t> seed;
    std::string neumann_mode;
    bool dump_matrix = false;
    bool dump_weights = false;

    void attach(CLI::App& cmd, bool with_input) {
        cmd.add_option("--config", config_path, "key = value run configuration")->check(CLI::ExistingFile);
        cmd.add_option("--out", out_dir, "output directory");
        if (with_input) cmd.add_option("--in", in_dir, "directory holding the previous stage's files (default: --out)");
        cmd.add_option("--m-hi", m_hi, "monomial degree of the explicit Laplacian");
        cmd.add_option("--alpha", alpha, "source strength");
        cmd.add_option("--h", h, "target node spacing");
        cmd.add_option("--seed", seed, "node placement seed");
        cmd.add_option("--neumann-mode", neumann_mode, "Neumann data variant")
            ->check(CLI::IsMember({"literal", "gradient"}));
    }

    RunConfig resolve() const {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (m_hi) cfg.m_hi = *m_hi;
        if (alpha) cfg.source.alpha = *alpha;
        if (h) cfg.domain.spacing = *h;
        if (seed) cfg.domain.seed = *seed;
        if (!neumann_mode.empty()) cfg.neumann_mode = parse_neumann_mode(neumann_mode);
        cfg.validate();
        return cfg;
    }

    fs::path input_dir(const RunConfig& cfg) const { return in_dir.empty() ? cfg.output_dir : fs::path(in_dir); }
};

void print_summary(const char* stage, const Timings& t) {
    std::fprintf(stderr, "[%s] done in %.3f s\n", stage, t.total());
}

int cmd_run(const CommonOptions& o) {
    const RunConfig cfg = o.resolve();
    const auto res = run_pipeline(cfg, true);
    const auto& rep = res.implicit.report;
    std::fprintf(stderr, "nodes: %zu  iterations: %zu  residual: %.3e  converged: %s\n", res.nodes.size(),
                 rep.iterations, rep.relative_residual, rep.converged ? "yes" : "no");
    std::fprintf(stderr, "argmax eps_an:   (%.4f, %.4f)\nargmax eps_imex: (%.4f, %.4f)\n",
                 res.peak_eps_an.position.x(), res.peak_eps_an.position.y(), res.peak_eps_imex.position.x(),
                 res.peak_eps_imex.position.y());
    print_summary("run", res.timings);
    if (!rep.converged) {
        std::fprintf(stderr, "warning: solver did not reach tol %.3e\n", cfg.tolerance);
        return 2;
    }
    return 0;
}

int cmd_generate(const CommonOptions& o) {
    const RunConfig cfg = o.resolve();
    Timings t;
    const NodeSet nodes = t.time("generate", [&] { return generate_nodes(cfg.domain); });
    fs::create_directories(cfg.output_dir);
    io::write_nodes(cfg.output_dir / "nodes.csv", nodes);
    std::fprintf(stderr, "nodes: %zu\n", nodes.size());
    print_summary("generate", t);
    return 0;
}

int cmd_solve(const CommonOptions& o) {
    const RunConfig cfg = o.resolve();
    const NodeSet nodes = io::read_nodes(o.input_dir(cfg) / "nodes.csv");
    Timings t;
    const ImplicitOptions opt{cfg.m_lo, cfg.neumann_stencil, cfg.phs_exponent, cfg.tolerance, cfg.max_iterations};
    const auto sol = solve_implicit(nodes, opt, gaussian_source_problem(cfg.source, cfg.neumann_mode), &t);

    fs::create_directories(cfg.output_dir);
    io::write_implicit(cfg.output_dir / "implicit.csv", nodes, sol.report.solution);
    if (o.dump_matrix) io::write_matrix_market(cfg.output_dir / "matrix.mtx", sol.system.matrix);
    if (o.dump_weights) {
        io::write_weights(cfg.output_dir / "weights_lap_lo.csv", sol.laplacian);
        io::write_weights(cfg.output_dir / "weights_dn_lo.csv", sol.normal_derivative);
    }
    nlohmann::ordered_json j;
    j["node_count"] = nodes.size();
    j["converged"] = sol.report.converged;
    j["iterations"] = sol.report.iterations;
    j["relative_residual"] = sol.report.relative_residual;
    nlohmann::ordered_json tj;
    for (const auto& [name, secs] : t.entries()) tj[name] = secs;
    j["timings_s"] = tj;
    std::ofstream(cfg.output_dir / "solve.json") << j.dump(2) << '\n';

    std::fprintf(stderr, "iterations: %zu  residual: %.3e  converged: %s\n", sol.report.iterations,
                 sol.report.relative_residual, sol.report.converged ? "yes" : "no");
    print_summary("solve", t);
    return sol.report.converged ? 0 : 2;
}

int cmd_indicate(const CommonOptions& o) {
    const RunConfig cfg = o.resolve();
    const fs::path in = o.input_dir(cfg);
    const NodeSet nodes = io::read_nodes(in / "nodes.csv");
    const auto u_im = io::read_implicit(in / "implicit.csv", nodes);
    Timings t;
    const auto field = evaluate_indicator(nodes, u_im, cfg.m_lo, cfg.m_hi, cfg.phs_exponent,
                                          gaussian_source_problem(cfg.source, cfg.neumann_mode), &t);
    fs::create_directories(cfg.output_dir);
    io::write_solution(cfg.output_dir / "solution.csv", nodes, field);
    const auto an = find_peak(field.eps_an, nodes, false);
    const auto imex = find_peak(field.eps_imex, nodes, true);
    std::fprintf(stderr, "argmax eps_an:   (%.4f, %.4f)\nargmax eps_imex: (%.4f, %.4f)\n", an.position.x(),
                 an.position.y(), imex.position.x(), imex.position.y());
    print_summary("indicate", t);
    return 0;
}

int cmd_sample(const CommonOptions& o) {
    const RunConfig cfg = o.resolve();
    const auto table = io::read_solution(o.input_dir(cfg) / "solution.csv");
    Timings t;
    const auto line = t.time("sample", [&] {
        return sample_line(table.nodes, table.field, cfg.domain.domain(), cfg.sample_count, cfg.sample_k,
                           cfg.sample_power);
    });
    fs::create_directories(cfg.output_dir);
    io::write_line(cfg.output_dir / "line.csv", line);
    print_summary("sample", t);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Meshless RBF-FD Poisson solver with an implicit-explicit error indicator"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help");  // -h would clash with --h

    CommonOptions opts;
    auto* run = app.add_subcommand("run", "full pipeline: generate, solve, indicate, sample");
    auto* gen = app.add_subcommand("generate", "scatter nodes over the disk -> nodes.csv");
    auto* solve = app.add_subcommand("solve", "low-order implicit solve nodes.csv -> implicit.csv");
    auto* ind = app.add_subcommand("indicate", "high-order explicit indicator -> solution.csv");
    auto* smp = app.add_subcommand("sample", "Shepard line sampling along y = x -> line.csv");
    opts.attach(*run, false);
    opts.attach(*gen, false);
    opts.attach(*solve, true);
    opts.attach(*ind, true);
    opts.attach(*smp, true);
    solve->add_flag("--dump-matrix", opts.dump_matrix, "also write matrix.mtx (Matrix Market)");
    solve->add_flag("--dump-weights", opts.dump_weights, "also write the low-order weight tables");

    CLI11_PARSE(app, argc, argv);

    const char* stage = (*run) ? "run" : (*gen) ? "generate" : (*solve) ? "solve" : (*ind) ? "indicate" : "sample";
    try {
        if (*run) return cmd_run(opts);
        if (*gen) return cmd_generate(opts);
        if (*solve) return cmd_solve(opts);
        if (*ind) return cmd_indicate(opts);
        if (*smp) return cmd_sample(opts);
    } catch (const StageError& e) {
        std::cerr << "error [" << e.stage() << "]: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error [" << stage << "]: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
