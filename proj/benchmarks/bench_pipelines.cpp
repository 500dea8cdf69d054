#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "convboot/degradation.hpp"
#include "convboot/mc_oracle.hpp"
#include "convboot/semi_markov.hpp"
#include "convboot/spectral.hpp"
#include "convboot/statistics.hpp"

using namespace convboot;

namespace {

GriddedPmf random_pmf(std::size_t n, std::size_t support) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> m(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < support; ++i) {
        m[i] = u(rng);
        total += m[i];
    }
    for (auto& v : m) {
        v /= total;
    }
    return {SupportGrid(0.0, 1.0, n), std::move(m)};
}

void BM_Forward(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto pmf = random_pmf(n, n / 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward(pmf));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Forward)->RangeMultiplier(4)->Range(1 << 8, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_Pow(benchmark::State& state) {
    const auto spec = forward(random_pmf(1 << 16, 1 << 10));
    const auto m = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pow(spec, m));
    }
}
BENCHMARK(BM_Pow)->Arg(4)->Arg(16)->Arg(64);

void BM_Inverse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto spec = forward(random_pmf(n, n / 8));
    for (auto _ : state) {
        benchmark::DoNotOptimize(inverse(spec));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Inverse)->RangeMultiplier(4)->Range(1 << 8, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_BoundedMean(benchmark::State& state) {
    const Sample s({1.0, std::numbers::pi, 6.0, 8.0});
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bootstrap_mean_bounded(s, AutoGrid{n}));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BoundedMean)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_Ex2Exact(benchmark::State& state) {
    const Sample s({-8.27, -7.46, -4.87, -2.87, -1.27, -0.67, -0.57, 3.93, 6.13, 15.93});
    for (auto _ : state) {
        benchmark::DoNotOptimize(bootstrap_mean(s, StepGrid{exact_step(s)}, Rounding::exact));
    }
}
BENCHMARK(BM_Ex2Exact);

void BM_SignFlipEx3(benchmark::State& state) {
    const Sample s({4.5, -34.2, 7.4, 12.6, -2.5, 1.7, -34.0, 7.3, 15.4, -3.8, 2.9, -4.2});
    SignFlipOptions opts;
    opts.grid = ExplicitGrid{0.0, 70.0, 8401};
    opts.total_shift = 35.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(signflip_mean(s, opts, Rounding::exact));
    }
}
BENCHMARK(BM_SignFlipEx3);

void BM_FailureTimeQuantile(benchmark::State& state) {
    const DegradationModel m({{0.12, 0.31, 0.07, 0.25}, {0.2, 0.18, 0.4}}, 100.0, 2.0, false);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpt_quantile(m, 0.9, DegradationGrid{}, 1e-3));
    }
}
BENCHMARK(BM_FailureTimeQuantile)->Unit(benchmark::kMillisecond);

void BM_FirstPassage(benchmark::State& state) {
    SemiMarkovData d;
    d.times_12 = {0.25, 0.5, 1.1, 2.3};
    d.times_13 = {0.15, 0.6, 0.95, 1.7, 4.2};
    d.times_21 = {0.3, 0.8, 1.6};
    d.times_23 = {0.4, 1.2, 2.9};
    d.p1 = 0.55;
    d.p2 = 0.4;
    const auto g = SupportGrid::spanning(0.0, 30.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(first_passage_bounded(d, g));
    }
}
BENCHMARK(BM_FirstPassage)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_MonteCarloMean(benchmark::State& state) {
    const Sample s({1.0, std::numbers::pi, 6.0, 8.0});
    const std::vector<double> probs{0.05, 0.5, 0.95};
    McConfig cfg;
    cfg.inner_samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_mean(s, probs, cfg));
    }
}
BENCHMARK(BM_MonteCarloMean)->RangeMultiplier(10)->Range(1'000, 1'000'000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
