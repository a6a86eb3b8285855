#include "rbfimex/linsys.hpp"
#include "rbfimex/nodegen.hpp"
#include "rbfimex/pipeline.hpp"
#include "rbfimex/rbffd.hpp"
#include "rbfimex/stencil.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace rbfimex;

namespace {

// Spacing from the benchmark argument, in units of 1e-4.
double spacing(const benchmark::State& state) { return static_cast<double>(state.range(0)) * 1e-4; }

const NodeSet& cached_nodes(double h) {
    static std::map<double, NodeSet> cache;
    auto it = cache.find(h);
    if (it == cache.end()) {
        DomainSpec spec;
        spec.spacing = h;
        it = cache.emplace(h, generate_nodes(spec)).first;
    }
    return it->second;
}

void BM_GenerateNodes(benchmark::State& state) {
    DomainSpec spec;
    spec.spacing = spacing(state);
    std::size_t n = 0;
    for (auto _ : state) {
        const NodeSet nodes = generate_nodes(spec);
        n = nodes.size();
        benchmark::DoNotOptimize(n);
    }
    state.counters["nodes"] = static_cast<double>(n);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_GenerateNodes)->Arg(400)->Arg(200)->Arg(106)->Unit(benchmark::kMillisecond);

void BM_BuildStencils(benchmark::State& state) {
    const NodeSet& nodes = cached_nodes(0.0106);
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto table = build_stencils_for_degree(nodes, m);
        benchmark::DoNotOptimize(table.indices.data());
    }
    state.counters["nodes"] = static_cast<double>(nodes.size());
}
BENCHMARK(BM_BuildStencils)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_LaplacianWeights(benchmark::State& state) {
    const NodeSet& nodes = cached_nodes(0.0106);
    const int m = static_cast<int>(state.range(0));
    const auto table = build_stencils_for_degree(nodes, m);
    const auto rows = nodes_of_kind(nodes, NodeKind::Interior);
    const RbfConfig cfg{3, m, 2};
    for (auto _ : state) {
        const auto w = compute_weights(nodes, table, LinearOperator::laplacian(), cfg, rows);
        benchmark::DoNotOptimize(w.weights.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * rows.size()));
}
BENCHMARK(BM_LaplacianWeights)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Bicgstab(benchmark::State& state) {
    const NodeSet& nodes = cached_nodes(spacing(state));
    const auto sol = solve_implicit(nodes, ImplicitOptions{}, gaussian_source_problem({}));
    std::size_t iterations = 0;
    for (auto _ : state) {
        const auto rep = solve_bicgstab(sol.system, 1e-10, 10 * nodes.size());
        iterations = rep.iterations;
        benchmark::DoNotOptimize(rep.solution.data());
    }
    state.counters["nodes"] = static_cast<double>(nodes.size());
    state.counters["iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_Bicgstab)->Arg(400)->Arg(200)->Arg(106)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
