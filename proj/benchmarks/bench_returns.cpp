#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "cvrisk/returns_engine.hpp"

namespace {

cvrisk::PriceSeries make_series(std::size_t months) {
    std::vector<cvrisk::PriceObservation> obs;
    for (std::size_t i = 0; i < months; ++i) {
        obs.push_back({cvrisk::YearMonth{1990, 1}.plus_months(static_cast<std::int64_t>(i)),
                       100.0 * std::exp(0.01 * static_cast<double>(i)) *
                           (1.0 + 0.05 * std::sin(static_cast<double>(i)))});
    }
    return {"B", std::move(obs)};
}

void BM_MonthlyAnnualReturns(benchmark::State& state) {
    const auto series = make_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = cvrisk::monthly_annual_returns(series);
        benchmark::DoNotOptimize(r.observations.data());
    }
}
BENCHMARK(BM_MonthlyAnnualReturns)->Arg(132)->Arg(1200);

void BM_ReturnStatsAndTier(benchmark::State& state) {
    const auto returns = cvrisk::monthly_annual_returns(make_series(132));
    for (auto _ : state) {
        const auto stats = cvrisk::return_stats(returns);
        benchmark::DoNotOptimize(cvrisk::classify_performance(stats, returns));
    }
}
BENCHMARK(BM_ReturnStatsAndTier);

}  // namespace
