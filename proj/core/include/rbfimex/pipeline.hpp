#pragma once

#include "rbfimex/config.hpp"
#include "rbfimex/imex.hpp"
#include "rbfimex/linsys.hpp"
#include "rbfimex/nodegen.hpp"
#include "rbfimex/poisson.hpp"
#include "rbfimex/sampling.hpp"

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rbfimex {

/// Wall-clock seconds per named stage, in execution order.
class Timings {
public:
    template <class F>
    decltype(auto) time(const std::string& name, F&& f) {
        const auto start = std::chrono::steady_clock::now();
        struct Record {
            Timings& self;
            const std::string& name;
            std::chrono::steady_clock::time_point start;
            ~Record() {
                self.add(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
            }
        } record{*this, name, start};
        return f();
    }

    void add(const std::string& name, double seconds);
    double get(const std::string& name) const;
    double total() const;
    const std::vector<std::pair<std::string, double>>& entries() const noexcept { return entries_; }

private:
    std::vector<std::pair<std::string, double>> entries_;
};

/// A failure tagged with the pipeline stage that raised it.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& message)
        : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct ImplicitOptions {
    int monomial_degree = 2;
    NeumannStencil neumann_stencil = NeumannStencil::InteriorNeighbors;
    int phs_exponent = 3;
    double tolerance = 1e-10;
    std::size_t max_iterations = 0;  // 0 selects 10 * node count
};

struct ImplicitSolution {
    SparseSystem system;
    SolveReport report;
    OperatorWeights laplacian;
    OperatorWeights normal_derivative;
};

/// Builds low-order Laplacian (interior) and normal-derivative (Neumann)
/// weights, assembles the collocation system and solves it with BiCGSTAB.
ImplicitSolution solve_implicit(const NodeSet& nodes, const ImplicitOptions& opt,
                                const BoundaryValueProblem& bvp, Timings* timings = nullptr);

/// High-order Laplacian weights at interior nodes.
OperatorWeights explicit_laplacian(const NodeSet& nodes, int monomial_degree, int phs_exponent,
                                   Timings* timings = nullptr);

/// Applies the high-order Laplacian to u_im and evaluates both error fields.
IndicatorField evaluate_indicator(const NodeSet& nodes, std::span<const double> u_im, int m_lo, int m_hi,
                                  int phs_exponent, const BoundaryValueProblem& bvp, Timings* timings = nullptr);

struct FieldPeak {
    std::size_t node = 0;
    Vec2 position = Vec2::Zero();
    double value = 0.0;
};

struct PipelineResult {
    NodeSet nodes;
    ImplicitSolution implicit;
    IndicatorField field;
    LineSample line;
    FieldPeak peak_eps_an;
    FieldPeak peak_eps_imex;
    Timings timings;
};

FieldPeak find_peak(std::span<const double> field, const NodeSet& nodes, bool interior_only);

/// Generate -> solve -> indicate -> sample. With write_outputs, writes
/// nodes.csv, implicit.csv, solution.csv, line.csv and report.json to
/// cfg.output_dir. Failures surface as StageError.
PipelineResult run_pipeline(const RunConfig& cfg, bool write_outputs = true);

/// report.json contents for a finished pipeline run.
std::string pipeline_report_json(const RunConfig& cfg, const PipelineResult& result);

}  // namespace rbfimex
