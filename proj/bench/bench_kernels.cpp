#include "tagscape/autocorrelation.hpp"
#include "tagscape/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace tagscape;

namespace {

struct Workload {
    std::vector<SizedMark> base;
    std::vector<kernels::Hypothesis> hyps;
};

// `real` placed tags and `virt` virtual marks over two polygons, plus `count` candidate hypotheses.
Workload make_workload(std::size_t real, std::size_t virt, std::size_t count)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> coord(0.0, 1e6), size(6.0, 60.0);
    Workload w;
    for (std::size_t i = 0; i < real; ++i)
        w.base.push_back({{coord(rng), coord(rng)}, std::round(size(rng)), i % 2, false});
    for (std::size_t i = 0; i < virt; ++i)
        w.base.push_back({{coord(rng), coord(rng)}, kVirtualSize, i % 2, true});
    for (std::size_t h = 0; h < count; ++h) {
        kernels::Hypothesis hyp{{{coord(rng), coord(rng)}, std::round(size(rng)), h % 2, false}, {}};
        for (std::size_t v = real; v < w.base.size(); ++v)
            if (rng() % 50 == 0 && w.base[v].polygon_index == h % 2) hyp.removed.push_back(v);
        w.hyps.push_back(std::move(hyp));
    }
    return w;
}

void BM_IndexSerial(benchmark::State& state)
{
    const Workload w = make_workload(static_cast<std::size_t>(state.range(0)), 4 * state.range(0), 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(overall_index(w.base).overall);
}

void BM_IndexParallel(benchmark::State& state)
{
    const Workload w = make_workload(static_cast<std::size_t>(state.range(0)), 4 * state.range(0), 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::overall_index_parallel(w.base).overall);
}

void BM_ScoreSerial(benchmark::State& state)
{
    const Workload w = make_workload(50, static_cast<std::size_t>(state.range(0)), 200);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::score_hypotheses_serial(w.base, w.hyps));
}

void BM_ScoreParallel(benchmark::State& state)
{
    const Workload w = make_workload(50, static_cast<std::size_t>(state.range(0)), 200);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::score_hypotheses_parallel(w.base, w.hyps));
}

} // namespace

BENCHMARK(BM_IndexSerial)->Arg(100)->Arg(400)->Arg(1600)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_IndexParallel)->Arg(100)->Arg(400)->Arg(1600)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScoreSerial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreParallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
