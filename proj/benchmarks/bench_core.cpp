#include <benchmark/benchmark.h>

#include "scalekit/catalog.hpp"
#include "scalekit/simulate.hpp"
#include "scalekit/transforms.hpp"

namespace {

void BM_NormalizeGamma(benchmark::State& state) {
    const auto spec = scalekit::instantiate("gamma", {{"k", 2.0}, {"alpha", 1.0}});
    scalekit::GridOptions options;
    options.points = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scalekit::normalize(spec, options));
    }
}
BENCHMARK(BM_NormalizeGamma)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_LevyInversion(benchmark::State& state) {
    scalekit::LevyOptions options;
    options.points = static_cast<std::size_t>(state.range(0));
    options.span = 2000.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scalekit::levy_stable_density(1.5, 1.0, options));
    }
}
BENCHMARK(BM_LevyInversion)->Arg(1 << 14)->Arg(1 << 16);

void BM_DiscreteMaxent(benchmark::State& state) {
    std::vector<double> t(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = static_cast<double>(i) / static_cast<double>(t.size());
    for (auto _ : state) {
        benchmark::DoNotOptimize(scalekit::discrete_maxent_oracle(t, 0.3));
    }
}
BENCHMARK(BM_DiscreteMaxent)->Arg(64)->Arg(512);

void BM_KolmogorovSmirnov(benchmark::State& state) {
    const auto samples =
        scalekit::scenario_samples("waiting_time_gamma", 100000, 42);
    const auto& predicted = scalekit::scenario_prediction("waiting_time_gamma");
    for (auto _ : state) {
        benchmark::DoNotOptimize(scalekit::fit_against_prediction(samples, predicted));
    }
}
BENCHMARK(BM_KolmogorovSmirnov);

void BM_SimulateWaitingTime(benchmark::State& state) {
    scalekit::ProcessSpec spec;
    spec.kind = scalekit::ProcessSpec::Kind::WaitingTimeKth;
    spec.k = 3;
    spec.sample_count = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scalekit::simulate(spec));
    }
}
BENCHMARK(BM_SimulateWaitingTime)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
