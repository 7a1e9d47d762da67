#include <benchmark/benchmark.h>

#include <random>

#include "magset/bidirected.hpp"
#include "magset/census.hpp"
#include "magset/power_dag.hpp"

using namespace magset;

namespace {

Admg cycle(int n) {
    std::vector<std::pair<int, int>> bid;
    for (int i = 0; i < n; ++i) bid.push_back({i, (i + 1) % n});
    return Admg(n, {}, bid);
}

Admg fig13() {
    return Admg(6, {{0, 4}, {1, 5}, {2, 3}},
                {{0, 1}, {0, 2}, {1, 2}, {1, 4}, {2, 5}, {0, 3}});
}

void bm_msep(benchmark::State& state) {
    Admg g = fig13();
    CITriple t(VertexSet::single(5), VertexSet::single(3), VertexSet({0, 1}));
    for (auto _ : state) benchmark::DoNotOptimize(g.m_separated(t));
}
BENCHMARK(bm_msep);

void bm_standard_imset(benchmark::State& state) {
    Admg g = cycle(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(standard_imset(g));
}
BENCHMARK(bm_standard_imset)->Arg(5)->Arg(6)->Arg(7);

void bm_combinatorial_5cycle(benchmark::State& state) {
    Imset u = standard_imset(cycle(5));
    for (auto _ : state) benchmark::DoNotOptimize(is_combinatorial(u));
}
BENCHMARK(bm_combinatorial_5cycle);

void bm_represents_lp(benchmark::State& state) {
    Imset u = standard_imset(cycle(5));
    CITriple t(VertexSet::single(0), VertexSet::single(2), VertexSet());
    for (auto _ : state) benchmark::DoNotOptimize(represents(u, t));
}
BENCHMARK(bm_represents_lp);

void bm_verdict(benchmark::State& state) {
    Admg g = cycle(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verdict(g));
}
BENCHMARK(bm_verdict)->Arg(5);

void bm_refined_power_dag(benchmark::State& state) {
    Admg g = fig13();
    std::vector<int> order{0, 1, 2, 3, 4, 5};
    for (auto _ : state) benchmark::DoNotOptimize(refined_power_dag(g, 5, order));
}
BENCHMARK(bm_refined_power_dag);

void bm_rooted_condition(benchmark::State& state) {
    Admg g = cycle(6);
    for (auto _ : state) benchmark::DoNotOptimize(rooted_condition(g));
}
BENCHMARK(bm_rooted_condition);

void bm_census_n4(benchmark::State& state) {
    for (auto _ : state) {
        CensusOptions opt;
        opt.n = 4;
        benchmark::DoNotOptimize(run_census(opt));
    }
}
BENCHMARK(bm_census_n4);

} // namespace

BENCHMARK_MAIN();
