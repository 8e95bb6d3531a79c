// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <cmath>

#include "bulkedge/invariants.hpp"
#include "bulkedge/models.hpp"

using namespace bulkedge;

namespace {

Exec mode(const benchmark::State& st) { return st.range(1) ? Exec::Parallel : Exec::Serial; }

DisorderSpace iid_space(long L, int samples) {
    DisorderParams dp;
    dp.kind = DisorderKind::Iid;
    dp.period = {int(L), int(L)};
    dp.orbitals = 2;
    dp.W = 0.5;
    dp.samples = samples;
    return DisorderSpace(dp);
}

void BM_represent(benchmark::State& st) {
    const long L = st.range(0);
    auto space = iid_space(L, 1);
    auto h = haldane(ModelParams{}, space);
    auto g = LatticeGeometry::open({L, L}, 2);
    for (auto _ : st) benchmark::DoNotOptimize(represent(h, 0, g, mode(st)).m.data());
}

void BM_average(benchmark::State& st) {
    const long L = st.range(0);
    auto space = iid_space(L, 8);
    auto h = haldane(ModelParams{}, space);
    auto g = LatticeGeometry::open({L, L}, 2);
    auto obs = [&](const DisorderConfig& w) { return represent(h, w.id, g, Exec::Serial).m.trace().real(); };
    for (auto _ : st) benchmark::DoNotOptimize(average(obs, space, 8, mode(st)).mean);
}

void BM_edge_flow(benchmark::State& st) {
    const long L = st.range(0);
    auto space = DisorderSpace::point(2);
    auto h = haldane(ModelParams{}, *space);
    for (auto _ : st) benchmark::DoNotOptimize(edge_spectral_flow(h, 0, L, L / 2, 0.0, 16, 0.6, mode(st)).crossings);
}

}  // namespace

BENCHMARK(BM_represent)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_average)->ArgsProduct({{12, 20}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_edge_flow)->ArgsProduct({{16}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
