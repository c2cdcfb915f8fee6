#include "gspdom/dp.hpp"
#include "gspdom/generator.hpp"
#include "gspdom/oracle.hpp"
#include "gspdom/recognize.hpp"

#include <benchmark/benchmark.h>

using namespace gspdom;

namespace {

GspExpression instance(int leaves, std::uint64_t seed = 17) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.target_leaves = leaves;
    return gen_expression(cfg);
}

void BM_SolveOne2(benchmark::State& state) {
    GspExpression e = instance(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(Variant::One2, e).value);
    }
    state.SetItemsProcessed(state.iterations() * e.leaf_count());
}
BENCHMARK(BM_SolveOne2)->RangeMultiplier(4)->Range(1 << 10, 1 << 18);

void BM_SolveTotal12(benchmark::State& state) {
    GspExpression e = instance(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        SolveResult r = solve(Variant::Total12, e);
        benchmark::DoNotOptimize(r.feasible);
    }
    state.SetItemsProcessed(state.iterations() * e.leaf_count());
}
BENCHMARK(BM_SolveTotal12)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_Recognize(benchmark::State& state) {
    Graph g = flatten(instance(static_cast<int>(state.range(0)))).graph;
    for (auto _ : state) {
        benchmark::DoNotOptimize(recognize(g).ok());
    }
    state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_Recognize)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_Generate(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) {
        GenConfig cfg;
        cfg.seed = ++seed;
        cfg.target_leaves = static_cast<int>(state.range(0));
        benchmark::DoNotOptimize(gen_expression(cfg).leaf_count());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_BruteOracle(benchmark::State& state) {
    GspExpression e = instance(static_cast<int>(state.range(0)), 23);
    Graph g = flatten(e).graph;
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_solve(Variant::One2, g).value);
    }
}
BENCHMARK(BM_BruteOracle)->DenseRange(4, 12, 4);

void BM_LeafTable(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(leaf_table(Variant::Total12).feasible_count());
    }
}
BENCHMARK(BM_LeafTable);

} // namespace

BENCHMARK_MAIN();
