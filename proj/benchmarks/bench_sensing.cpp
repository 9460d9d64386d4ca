#include <benchmark/benchmark.h>

#include "adawave/harness.hpp"

using namespace adawave;

namespace {

Design refined_design() {
    Design d = Design::uniform(1 << 10);
    d.insert_grid(4, 0, 14);
    d.insert_grid(4, 1, 12);
    return d;
}

void BM_FinestEmbeddedLevels(benchmark::State& state) {
    const Design d = refined_design();
    const WaveletSpec spec = WaveletSpec::daubechies(8, 5);
    const int j = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(d.finest_embedded_levels(j, spec));
}
BENCHMARK(BM_FinestEmbeddedLevels)->Arg(6)->Arg(9)->Arg(12);

void BM_EstimatePractical(benchmark::State& state) {
    const Design d = refined_design();
    const WaveletSpec spec = WaveletSpec::daubechies(8, 5);
    const PointOracle oracle = make_noise_oracle(TestFunction::doppler, 1.0, 7,
                                                 DesignMode::adaptive, 0);
    Observations obs;
    for (const DyadicPoint& p : d.points()) obs.set(p, oracle(p));
    const int target = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_practical(d, obs, spec, {}, target));
}
BENCHMARK(BM_EstimatePractical)->Arg(12)->Arg(17);

void BM_StageSelection(benchmark::State& state) {
    const WaveletSpec spec = WaveletSpec::daubechies(8, 5);
    for (auto _ : state) {
        state.PauseTiming();
        Design d = Design::uniform(1 << 10);
        CoefficientSet c;
        c.coarsest = 5;
        c.top = 8;
        c.n_samples = 1 << 10;
        c.alpha.assign(32, 0.0);
        for (int j = 5; j < 8; ++j) {
            c.beta.emplace_back(std::size_t{1} << j, 0.0);
            c.i_n.emplace_back(std::size_t{1} << j, 10);
            c.surviving.emplace_back(std::size_t{1} << j, 0);
        }
        c.thresholded = true;
        c.beta[2][0] = 1.0;
        c.surviving[2][0] = 1;
        const TargetDensity density = target_density(c, 9, c.top, 0.5, spec);
        state.ResumeTiming();
        benchmark::DoNotOptimize(select_stage_points(d, density, 1 << 11));
    }
}
BENCHMARK(BM_StageSelection);

void BM_AdaptiveRun(benchmark::State& state) {
    ExperimentConfig cfg;
    cfg.function = TestFunction::doppler;
    cfg.sigma = 1.0;
    cfg.n_total = std::size_t{1} << static_cast<std::size_t>(state.range(0));
    cfg.master_seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_adaptive(cfg, 0));
}
BENCHMARK(BM_AdaptiveRun)->Arg(11)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_MannWhitneyExact(benchmark::State& state) {
    std::vector<double> a{1, 3, 3, 5, 7, 8, 9, 11};
    std::vector<double> b{2, 3, 4, 6, 7, 10, 12, 13};
    for (auto _ : state) benchmark::DoNotOptimize(mann_whitney_u(a, b));
}
BENCHMARK(BM_MannWhitneyExact);

}  // namespace

BENCHMARK_MAIN();
