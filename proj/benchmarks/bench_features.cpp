#include <benchmark/benchmark.h>

#include <vector>

#include "rff/features.hpp"
#include "rff/norms.hpp"
#include "rff/spectral.hpp"

using namespace rff;

static void KernelEstimate(benchmark::State& state) {
    const auto mu = SpectralMeasure::gaussian_iso(2, 1.0);
    const auto fs = sample_frequencies(mu, state.range(0), 42);
    const std::vector<double> x{0.3, -0.7}, y{1.1, 0.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_kernel(fs, x, y));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(KernelEstimate)->RangeMultiplier(4)->Range(64, 1 << 14)->Complexity();

static void DerivativeBatch(benchmark::State& state) {
    const auto mu = SpectralMeasure::uniform_box(1, 2.0);
    const auto fs = sample_frequencies(mu, state.range(0), 42);
    const MultiIndex p({1}), q({1});
    const std::int64_t n = 512;
    std::vector<double> zs(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        zs[static_cast<std::size_t>(i)] = -1.0 + 2.0 * static_cast<double>(i) / (n - 1);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto _ : state) {
        estimate_derivative_batch(fs, p, q, zs, n, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(DerivativeBatch)->RangeMultiplier(4)->Range(64, 1 << 13)->Complexity();

static void Embed(benchmark::State& state) {
    const auto mu = SpectralMeasure::gaussian_iso(3, 1.0);
    const auto fs = sample_frequencies(mu, state.range(0), 7);
    const std::vector<double> x{0.3, -0.7, 0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(embed(fs, MultiIndex({1, 0, 0}), x));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(Embed)->RangeMultiplier(4)->Range(64, 1 << 13)->Complexity();

static void CertifiedSup(benchmark::State& state) {
    const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
    const auto fs = sample_frequencies(mu, state.range(0), 11);
    const auto s  = CompactSet::box({0.0}, {1.0});
    const auto z  = MultiIndex::zeros(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sup_error_certified(fs, z, z, mu, s, 1e-3));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(CertifiedSup)->RangeMultiplier(4)->Range(64, 1 << 12)->Complexity();

static void SampleGaussian(benchmark::State& state) {
    const auto mu = SpectralMeasure::gaussian_iso(4, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_frequencies(mu, state.range(0), 123));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(SampleGaussian)->RangeMultiplier(4)->Range(256, 1 << 14)->Complexity();

BENCHMARK_MAIN();
