#include <benchmark/benchmark.h>

#include "gmr/gmap.hpp"
#include "grid.hpp"

namespace {

void BM_Orbit(benchmark::State& state) {
    const auto g = bench::grid(int(state.range(0)));
    const gmr::OrbitType all{{0, 1, 2}};
    for (auto _ : state) benchmark::DoNotOptimize(gmr::orbit(g.graph, all, "d0_0_0"));
    state.SetItemsProcessed(state.iterations() * std::int64_t(g.graph.node_count()));
}
BENCHMARK(BM_Orbit)->Arg(4)->Arg(16)->Arg(32);

void BM_OrbitClasses(benchmark::State& state) {
    const auto g = bench::grid(int(state.range(0)));
    const gmr::OrbitType vertex{{1, 2}};
    for (auto _ : state) benchmark::DoNotOptimize(gmr::orbit_classes(g.graph, vertex));
}
BENCHMARK(BM_OrbitClasses)->Arg(4)->Arg(16)->Arg(32);

void BM_CheckGMap(benchmark::State& state) {
    const auto g = bench::grid(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(gmr::check_gmap(g));
}
BENCHMARK(BM_CheckGMap)->Arg(4)->Arg(16);

}  // namespace
