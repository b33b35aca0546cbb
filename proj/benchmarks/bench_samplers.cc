#include <benchmark/benchmark.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "segproc/density.hpp"
#include "segproc/gem.hpp"
#include "segproc/max_uniform.hpp"
#include "segproc/process.hpp"
#include "segproc/rng.hpp"
#include "segproc/stats.hpp"
#include "segproc/thinned.hpp"

namespace {

void BM_direct_chain(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t stream = 0;
    for (auto _ : state) {
        segproc::RngStream rng(1, stream++);
        benchmark::DoNotOptimize(segproc::run_direct_final(n, rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_direct_chain)->Arg(100)->Arg(1000)->Arg(10000);

void BM_center_series(benchmark::State& state) {
    const double eps = 1e-12;
    std::uint64_t stream = 0;
    for (auto _ : state) {
        segproc::RngStream rng(1, stream++);
        benchmark::DoNotOptimize(segproc::sample_center_series(eps, rng));
    }
}
BENCHMARK(BM_center_series);

void BM_gem(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    std::uint64_t stream = 0;
    for (auto _ : state) {
        segproc::RngStream rng(1, stream++);
        benchmark::DoNotOptimize(segproc::sample_gem(m, rng));
    }
}
BENCHMARK(BM_gem)->Arg(50);

void BM_max_uniform(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t stream = 0;
    for (auto _ : state) {
        segproc::RngStream rng(1, stream++);
        benchmark::DoNotOptimize(segproc::sample_max_uniform(n, 0.0, rng));
    }
}
BENCHMARK(BM_max_uniform)->Arg(1000);

void BM_coefficient_step(benchmark::State& state) {
    const auto levels = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto row = segproc::density::first_coefficient_row(256);
        for (std::uint64_t i = 1; i < levels; ++i)
            row = segproc::density::next_coefficient_row(row);
        benchmark::DoNotOptimize(row);
    }
}
BENCHMARK(BM_coefficient_step)->Arg(10)->Arg(30);

void BM_two_sample_ks(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    segproc::RngStream rng(7, 0);
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = rng.uniform01();
    for (auto& x : b) x = rng.uniform01();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (auto _ : state)
        benchmark::DoNotOptimize(segproc::stats::two_sample_ks(a, b));
}
BENCHMARK(BM_two_sample_ks)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
