#include "cvrisk/returns_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cvrisk/errors.hpp"

namespace cvrisk {
namespace {

double percent_change(double from, double to) { return (to - from) / from * 100.0; }

void require_gap_free(std::span<const PriceObservation> obs) {
    for (std::size_t i = 1; i < obs.size(); ++i) {
        if (obs[i].month.ordinal() != obs[i - 1].month.ordinal() + 1) {
            throw GapError(obs[i - 1].month.plus_months(1));
        }
    }
}

double ols_slope(const ReturnSeries& returns) {
    const auto n = returns.observations.size();
    if (n < 2) {
        return 0.0;
    }
    const auto origin = returns.observations.front().month.ordinal();
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& o : returns.observations) {
        sx += static_cast<double>(o.month.ordinal() - origin);
        sy += o.percent;
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& o : returns.observations) {
        const double dx = static_cast<double>(o.month.ordinal() - origin) - mx;
        sxy += dx * (o.percent - my);
        sxx += dx * dx;
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

PriceSeries::PriceSeries(std::string id, std::vector<PriceObservation> observations)
    : id_(std::move(id)), observations_(std::move(observations)) {
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        const auto& o = observations_[i];
        if (!o.month.valid()) {
            throw DomainError(id_ + ": invalid month " + std::to_string(o.month.month));
        }
        if (!(o.close > 0.0) || !std::isfinite(o.close)) {
            throw DomainError(id_ + ": close at " + o.month.to_string() + " must be positive");
        }
        if (i > 0 && !(observations_[i - 1].month < o.month)) {
            throw DomainError(id_ + ": months must be strictly increasing at " +
                              o.month.to_string());
        }
    }
}

const char* to_string(ReturnMethod method) noexcept {
    switch (method) {
        case ReturnMethod::MonthlyAnnual: return "monthly_annual";
        case ReturnMethod::EndOfYear: return "end_of_year";
    }
    return "unknown";
}

const char* to_string(Tier tier) noexcept {
    switch (tier) {
        case Tier::Strong: return "strong";
        case Tier::Moderate: return "moderate";
        case Tier::Elevated: return "elevated";
        case Tier::NegativeMean: return "negative_mean";
    }
    return "unknown";
}

ReturnSeries monthly_annual_returns(const PriceSeries& prices) {
    const auto obs = prices.observations();
    if (obs.size() < 13) {
        throw InsufficientDataError(prices.id() + ": monthly annual returns need at least 13 "
                                    "monthly prices, got " + std::to_string(obs.size()));
    }
    require_gap_free(obs);

    ReturnSeries out{ReturnMethod::MonthlyAnnual, {}};
    out.observations.reserve(obs.size() - 12);
    for (std::size_t i = 12; i < obs.size(); ++i) {
        out.observations.push_back({obs[i].month, percent_change(obs[i - 12].close, obs[i].close)});
    }
    return out;
}

ReturnSeries end_of_year_returns(const PriceSeries& prices) {
    std::vector<PriceObservation> decembers;
    for (const auto& o : prices.observations()) {
        if (o.month.month == 12) {
            decembers.push_back(o);
        }
    }
    if (decembers.size() < 2) {
        throw InsufficientDataError(prices.id() + ": end-of-year returns need at least 2 "
                                    "December prices, got " + std::to_string(decembers.size()));
    }
    ReturnSeries out{ReturnMethod::EndOfYear, {}};
    out.observations.reserve(decembers.size() - 1);
    for (std::size_t i = 1; i < decembers.size(); ++i) {
        if (decembers[i].month.year != decembers[i - 1].month.year + 1) {
            throw GapError(YearMonth{decembers[i - 1].month.year + 1, 12});
        }
        out.observations.push_back(
            {decembers[i].month, percent_change(decembers[i - 1].close, decembers[i].close)});
    }
    return out;
}

ReturnStats return_stats(std::span<const double> percents, StdMode mode) {
    const auto n = percents.size();
    if (n < 2) {
        throw InsufficientDataError("return statistics need at least 2 returns, got " +
                                    std::to_string(n));
    }
    const double mu = std::accumulate(percents.begin(), percents.end(), 0.0) /
                      static_cast<double>(n);
    double ss = 0.0;
    for (double r : percents) {
        ss += (r - mu) * (r - mu);
    }
    const double denom = static_cast<double>(mode == StdMode::Sample ? n - 1 : n);
    const double sigma = std::sqrt(ss / denom);

    ReturnStats stats;
    stats.mu = mu;
    stats.sigma = sigma;
    stats.cv = CoefficientOfVariation::of(sigma, mu);
    stats.risk = risk_from_mu_sigma(mu, sigma);
    stats.n = n;
    return stats;
}

ReturnStats return_stats(const ReturnSeries& returns, StdMode mode) {
    std::vector<double> values;
    values.reserve(returns.observations.size());
    for (const auto& o : returns.observations) {
        values.push_back(o.percent);
    }
    return return_stats(values, mode);
}

PerformanceTier classify_performance(const ReturnStats& stats, const ReturnSeries& returns,
                                     const ClassifierConfig& config) {
    PerformanceTier result;
    if (stats.mu < 0.0) {
        result.tier = Tier::NegativeMean;
    } else if (!stats.cv.defined) {
        result.tier = Tier::Elevated;
    } else if (stats.cv.value <= config.strong_cv) {
        result.tier = Tier::Strong;
    } else if (stats.cv.value <= config.moderate_cv) {
        result.tier = Tier::Moderate;
    } else {
        result.tier = Tier::Elevated;
    }

    result.max_return = -std::numeric_limits<double>::infinity();
    for (const auto& o : returns.observations) {
        result.max_return = std::max(result.max_return, o.percent);
    }
    if (returns.observations.empty()) {
        result.max_return = 0.0;
    }
    result.trend_slope = ols_slope(returns);
    result.bubble_flag = result.max_return > config.bubble_return &&
                         std::abs(result.trend_slope) > config.slope_threshold;
    return result;
}

DensityGrid::DensityGrid(std::size_t time_bins, std::size_t return_bins, double lo, double hi)
    : time_bins_(time_bins), return_bins_(return_bins), lo_(lo), hi_(hi) {
    if (time_bins == 0 || return_bins == 0) {
        throw DomainError("density grid needs at least one bin on each axis");
    }
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("density grid return range needs lo < hi");
    }
    counts_.assign(time_bins * return_bins, 0);
}

double DensityGrid::return_edge(std::size_t r) const noexcept {
    return lo_ + (hi_ - lo_) * static_cast<double>(r) / static_cast<double>(return_bins_);
}

std::size_t DensityGrid::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

DensityGrid return_density_grid(std::span<const ReturnSeries> all_returns, std::size_t time_bins,
                                std::size_t return_bins, double lo, double hi) {
    DensityGrid grid(time_bins, return_bins, lo, hi);

    bool any = false;
    std::int64_t first = 0;
    std::int64_t last = 0;
    for (const auto& series : all_returns) {
        for (const auto& o : series.observations) {
            const auto ord = o.month.ordinal();
            first = any ? std::min(first, ord) : ord;
            last = any ? std::max(last, ord) : ord;
            any = true;
        }
    }
    if (!any) {
        return grid;
    }
    grid.first_month = YearMonth::from_ordinal(first);
    grid.last_month = YearMonth::from_ordinal(last);

    const auto span_months = last - first + 1;
    const auto tb = static_cast<std::int64_t>(time_bins);
    for (const auto& series : all_returns) {
        for (const auto& o : series.observations) {
            if (!(o.percent >= lo && o.percent <= hi)) {
                continue;
            }
            const auto t = static_cast<std::size_t>((o.month.ordinal() - first) * tb / span_months);
            auto r = static_cast<std::size_t>((o.percent - lo) / (hi - lo) *
                                              static_cast<double>(return_bins));
            r = std::min(r, return_bins - 1);
            ++grid.at(t, r);
        }
    }
    return grid;
}

}  // namespace cvrisk
