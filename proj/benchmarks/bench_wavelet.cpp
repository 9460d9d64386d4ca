#include <benchmark/benchmark.h>

#include <random>

#include "adawave/wavelet.hpp"

using namespace adawave;

namespace {

std::vector<double> random_vector(std::size_t n) {
    std::mt19937_64 rng(n);
    std::normal_distribution<double> dist;
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

void BM_FwtForward(benchmark::State& state) {
    const WaveletSpec spec = WaveletSpec::daubechies(8, 5);
    const std::vector<double> v = random_vector(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fwt_forward(v, spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FwtForward)->RangeMultiplier(4)->Range(1 << 6, 1 << 17);

void BM_FwtRoundTrip(benchmark::State& state) {
    const WaveletSpec spec = WaveletSpec::daubechies(8, 5);
    const std::vector<double> v = random_vector(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const CoefficientPyramid pyr = fwt_forward(v, spec);
        benchmark::DoNotOptimize(fwt_inverse(pyr, spec));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FwtRoundTrip)->RangeMultiplier(4)->Range(1 << 6, 1 << 17);

void BM_HaarVsDb8(benchmark::State& state) {
    const WaveletSpec spec =
        state.range(0) == 1 ? WaveletSpec::haar(0) : WaveletSpec::daubechies(8, 5);
    const std::vector<double> v = random_vector(1 << 14);
    for (auto _ : state) benchmark::DoNotOptimize(fwt_forward(v, spec));
}
BENCHMARK(BM_HaarVsDb8)->Arg(1)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
