#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvrisk/calendar.hpp"
#include "cvrisk/risk_math.hpp"

namespace cvrisk {

struct PriceObservation {
    YearMonth month;
    double close = 0.0;

    friend bool operator==(const PriceObservation&, const PriceObservation&) = default;
};

/// Monthly closing prices of one security.
///
/// Invariants (checked on construction): strictly increasing months, every
/// close positive and finite. Gaps between months are allowed here; the
/// return calculations reject them where they matter.
class PriceSeries {
public:
    PriceSeries() = default;
    PriceSeries(std::string id, std::vector<PriceObservation> observations);

    const std::string& id() const noexcept { return id_; }
    std::span<const PriceObservation> observations() const noexcept { return observations_; }
    std::size_t size() const noexcept { return observations_.size(); }
    bool empty() const noexcept { return observations_.empty(); }

    friend bool operator==(const PriceSeries&, const PriceSeries&) = default;

private:
    std::string id_;
    std::vector<PriceObservation> observations_;
};

enum class ReturnMethod {
    MonthlyAnnual,  ///< every month against the same month one year earlier
    EndOfYear,      ///< December against the previous December
};

const char* to_string(ReturnMethod method) noexcept;

struct ReturnObservation {
    YearMonth month;  ///< month of the later price
    double percent = 0.0;
};

struct ReturnSeries {
    ReturnMethod method = ReturnMethod::MonthlyAnnual;
    std::vector<ReturnObservation> observations;

    std::size_t size() const noexcept { return observations.size(); }
};

enum class StdMode { Sample, Population };

struct ReturnStats {
    double mu = 0.0;     ///< mean return, percent
    double sigma = 0.0;  ///< standard deviation, percent
    CoefficientOfVariation cv;
    RiskPercent risk;
    std::size_t n = 0;
};

/// (close_m - close_{m-12}) / close_{m-12} * 100 for every month with a
/// year-ago observation. Requires >= 13 observations; any missing calendar
/// month inside the series throws GapError naming the first one.
ReturnSeries monthly_annual_returns(const PriceSeries& prices);

/// One return per pair of consecutive Decembers. Requires >= 2 Decembers;
/// a skipped December year throws GapError.
ReturnSeries end_of_year_returns(const PriceSeries& prices);

/// Mean, standard deviation (n-1 or n denominator), CV and risk.
/// Throws InsufficientDataError when fewer than 2 returns are given.
ReturnStats return_stats(const ReturnSeries& returns, StdMode mode = StdMode::Sample);
ReturnStats return_stats(std::span<const double> percents, StdMode mode = StdMode::Sample);

enum class Tier { Strong, Moderate, Elevated, NegativeMean };

const char* to_string(Tier tier) noexcept;

struct PerformanceTier {
    Tier tier = Tier::Strong;
    bool bubble_flag = false;
    double max_return = 0.0;   ///< percent
    double trend_slope = 0.0;  ///< OLS slope, percent per month
};

struct ClassifierConfig {
    /// Upper CV of the Strong band.
    double strong_cv = 1.0;
    /// Upper CV of the Moderate band.
    double moderate_cv = 2.0;
    /// A bubble needs some return above this (percent).
    double bubble_return = 100.0;
    /// ...and an |OLS slope| above this (percentage points per month).
    double slope_threshold = 1.0;
};

/// Banding: NegativeMean when mu < 0; otherwise Strong for CV <= 1.0,
/// Moderate for CV <= 2.0, Elevated above. A zero mean (undefined CV) is
/// Elevated.
PerformanceTier classify_performance(const ReturnStats& stats, const ReturnSeries& returns,
                                     const ClassifierConfig& config = {});

/// Counts of (time, return) observations on a regular grid.
///
/// The time axis spans the earliest to the latest observed month across all
/// series; the return axis spans [lo, hi], the last bin closed on the right.
/// Observations outside [lo, hi] are not counted.
class DensityGrid {
public:
    DensityGrid(std::size_t time_bins, std::size_t return_bins, double lo, double hi);

    std::size_t time_bins() const noexcept { return time_bins_; }
    std::size_t return_bins() const noexcept { return return_bins_; }
    double return_lo() const noexcept { return lo_; }
    double return_hi() const noexcept { return hi_; }
    /// Lower edge of return bin `r`.
    double return_edge(std::size_t r) const noexcept;

    std::size_t at(std::size_t t, std::size_t r) const { return counts_.at(t * return_bins_ + r); }
    std::size_t& at(std::size_t t, std::size_t r) { return counts_.at(t * return_bins_ + r); }
    std::size_t total() const noexcept;

    /// First and last month covered by the time axis; empty on empty input.
    std::optional<YearMonth> first_month;
    std::optional<YearMonth> last_month;

private:
    std::size_t time_bins_;
    std::size_t return_bins_;
    double lo_;
    double hi_;
    std::vector<std::size_t> counts_;
};

/// Throws DomainError when a bin count is zero or lo >= hi.
DensityGrid return_density_grid(std::span<const ReturnSeries> all_returns, std::size_t time_bins,
                                std::size_t return_bins, double lo, double hi);

}  // namespace cvrisk
