#include <benchmark/benchmark.h>

#include "cvrisk/portfolio_frontier.hpp"

namespace {

void BM_TwoAssetFrontier(benchmark::State& state) {
    const double step = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto rows = cvrisk::two_asset_frontier({12, 20}, {4, 9}, 0.0, step);
        benchmark::DoNotOptimize(rows.data());
    }
    state.SetItemsProcessed(state.iterations() * (state.range(0) + 1));
}
BENCHMARK(BM_TwoAssetFrontier)->Arg(20)->Arg(1000)->Arg(100'000);

void BM_PortfolioVariance(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<cvrisk::SecurityParams> secs(n, {8.0, 15.0});
    const cvrisk::WeightVector w(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    const auto corr = cvrisk::CorrelationMatrix::uniform(n, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvrisk::portfolio_variance(w, secs, corr));
    }
}
BENCHMARK(BM_PortfolioVariance)->Arg(2)->Arg(50)->Arg(500);

}  // namespace
