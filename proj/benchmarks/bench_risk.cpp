#include <benchmark/benchmark.h>

#include "cvrisk/risk_math.hpp"

namespace {

void BM_ErfApprox(benchmark::State& state) {
    double x = -6.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvrisk::erf_approx(x));
        x = x > 6.0 ? -6.0 : x + 0.001;
    }
}
BENCHMARK(BM_ErfApprox);

void BM_RiskFromMuSigma(benchmark::State& state) {
    double sigma = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvrisk::risk_from_mu_sigma(12.0, sigma));
        sigma = sigma > 100.0 ? 1.0 : sigma + 0.01;
    }
}
BENCHMARK(BM_RiskFromMuSigma);

void BM_RiskByIntegration(benchmark::State& state) {
    const double tol = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvrisk::risk_by_integration(12.0, 20.0, tol));
    }
}
BENCHMARK(BM_RiskByIntegration)->Arg(10'000)->Arg(100'000'000)->Arg(10'000'000'000);

}  // namespace
