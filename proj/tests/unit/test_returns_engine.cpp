#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "cvrisk/decimal_format.hpp"
#include "cvrisk/errors.hpp"
#include "cvrisk/returns_engine.hpp"

using namespace cvrisk;

namespace {

// Monthly series starting at `start`, one close per element.
PriceSeries monthly(const std::vector<double>& closes, YearMonth start = {2008, 1},
                    std::string id = "X") {
    std::vector<PriceObservation> obs;
    for (std::size_t i = 0; i < closes.size(); ++i) {
        obs.push_back({start.plus_months(static_cast<std::int64_t>(i)), closes[i]});
    }
    return PriceSeries(std::move(id), std::move(obs));
}

// Decembers follow a steady 10 %/yr path while every other month swings
// +-30 % around it, the sign of the swing flipping each year.
PriceSeries divergence_series() {
    std::vector<double> closes;
    for (int year = 0; year < 11; ++year) {
        const double base = 100.0 * std::pow(1.10, year);
        for (int m = 1; m <= 12; ++m) {
            const double swing = m == 12 ? 1.0 : ((m + year) % 2 ? 1.3 : 0.7);
            closes.push_back(base * swing);
        }
    }
    return monthly(closes);
}

}  // namespace

TEST(PriceSeries, RejectsBadObservations) {
    EXPECT_THROW(PriceSeries("a", {{{2008, 1}, 0.0}}), DomainError);
    EXPECT_THROW(PriceSeries("a", {{{2008, 1}, -1.0}}), DomainError);
    EXPECT_THROW(PriceSeries("a", {{{2008, 2}, 1.0}, {{2008, 1}, 1.0}}), DomainError);
    EXPECT_THROW(PriceSeries("a", {{{2008, 1}, 1.0}, {{2008, 1}, 2.0}}), DomainError);
    EXPECT_THROW(PriceSeries("a", {{{2008, 13}, 1.0}}), DomainError);
}

TEST(MonthlyAnnualReturns, FlatPricesGiveZero) {
    const auto r = monthly_annual_returns(monthly(std::vector<double>(13, 100.0)));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r.observations[0].percent, 0.0);
    EXPECT_EQ(r.observations[0].month, (YearMonth{2009, 1}));
    EXPECT_EQ(r.method, ReturnMethod::MonthlyAnnual);
}

TEST(MonthlyAnnualReturns, Doubling) {
    std::vector<double> closes(13, 70.0);
    closes[0] = 50.0;
    closes[12] = 100.0;
    const auto r = monthly_annual_returns(monthly(closes));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_DOUBLE_EQ(r.observations[0].percent, 100.0);
}

TEST(MonthlyAnnualReturns, GeometricSeries) {
    std::vector<double> closes;
    double p = 40.0;
    for (int i = 0; i < 25; ++i) {
        closes.push_back(p);
        p *= 1.01;
    }
    const auto r = monthly_annual_returns(monthly(closes));
    ASSERT_EQ(r.size(), 13u);
    // (1.01^12 - 1) * 100 = 12.68250301319697...
    for (const auto& o : r.observations) {
        EXPECT_NEAR(o.percent, 12.682503013196972, 1e-9);
    }
}

TEST(MonthlyAnnualReturns, LengthLaw) {
    for (std::size_t n : {13u, 14u, 24u, 132u, 240u}) {
        EXPECT_EQ(monthly_annual_returns(monthly(std::vector<double>(n, 3.0))).size(), n - 12);
    }
}

TEST(MonthlyAnnualReturns, ChronologicalOrder) {
    std::vector<double> closes;
    for (int i = 0; i < 40; ++i) closes.push_back(10.0 + i);
    const auto r = monthly_annual_returns(monthly(closes, {2010, 7}));
    for (std::size_t i = 1; i < r.size(); ++i) {
        EXPECT_LT(r.observations[i - 1].month, r.observations[i].month);
    }
    EXPECT_EQ(r.observations.front().month, (YearMonth{2011, 7}));
}

TEST(MonthlyAnnualReturns, InsufficientData) {
    EXPECT_THROW(monthly_annual_returns(monthly(std::vector<double>(12, 1.0))),
                 InsufficientDataError);
}

TEST(MonthlyAnnualReturns, GapNamesMissingMonth) {
    std::vector<PriceObservation> obs;
    for (int i = 0; i < 20; ++i) {
        if (i == 7) continue;
        obs.push_back({YearMonth{2008, 1}.plus_months(i), 10.0});
    }
    try {
        monthly_annual_returns(PriceSeries("g", obs));
        FAIL() << "expected GapError";
    } catch (const GapError& e) {
        EXPECT_EQ(e.missing(), (YearMonth{2008, 8}));
        EXPECT_NE(std::string(e.what()).find("2008-08"), std::string::npos);
    }
}

TEST(MonthlyAnnualReturns, PriceScaleInvariance) {
    std::mt19937_64 rng(11);
    std::lognormal_distribution<double> step(0.0, 0.08);
    std::vector<double> closes{50.0};
    for (int i = 1; i < 60; ++i) closes.push_back(closes.back() * step(rng));
    const auto base = monthly_annual_returns(monthly(closes));
    for (double k : {0.01, 3.0, 1e6}) {
        std::vector<double> scaled;
        for (double c : closes) scaled.push_back(c * k);
        const auto r = monthly_annual_returns(monthly(scaled));
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double a = base.observations[i].percent;
            const double b = r.observations[i].percent;
            EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST(EndOfYearReturns, TwoDecembers) {
    std::vector<double> closes(13, 120.0);
    closes[0] = 100.0;   // 2008-12
    closes[12] = 150.0;  // 2009-12
    const auto r = end_of_year_returns(monthly(closes, {2008, 12}));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_DOUBLE_EQ(r.observations[0].percent, 50.0);
    EXPECT_EQ(r.method, ReturnMethod::EndOfYear);
}

TEST(EndOfYearReturns, ElevenDecembersGiveTenReturns) {
    const auto r = end_of_year_returns(monthly(std::vector<double>(121, 5.0), {2008, 12}));
    EXPECT_EQ(r.size(), 10u);
    EXPECT_EQ(r.observations.front().month, (YearMonth{2009, 12}));
    EXPECT_EQ(r.observations.back().month, (YearMonth{2018, 12}));
}

TEST(EndOfYearReturns, Errors) {
    EXPECT_THROW(end_of_year_returns(monthly(std::vector<double>(12, 5.0), {2008, 1})),
                 InsufficientDataError);
    EXPECT_THROW(end_of_year_returns(PriceSeries("d", {{{2008, 12}, 1.0}, {{2010, 12}, 2.0}})),
                 GapError);
}

TEST(EndOfYearReturns, IgnoresInterveningMonths) {
    const auto series = divergence_series();
    std::vector<double> calm;
    for (const auto& o : series.observations()) {
        calm.push_back(100.0 * std::pow(1.10, o.month.year - 2008));
    }
    const auto a = end_of_year_returns(series);
    const auto b = end_of_year_returns(monthly(calm));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a.observations[i].percent, b.observations[i].percent, 1e-9);
    }
    const auto ma = monthly_annual_returns(series);
    const auto mb = monthly_annual_returns(monthly(calm));
    bool differ = false;
    for (std::size_t i = 0; i < ma.size(); ++i) {
        differ |= std::abs(ma.observations[i].percent - mb.observations[i].percent) > 1.0;
    }
    EXPECT_TRUE(differ);
}

TEST(EndOfYearReturns, MethodDivergenceOfCv) {
    const auto series = divergence_series();
    const auto eoy = return_stats(end_of_year_returns(series));
    const auto ma = return_stats(monthly_annual_returns(series));
    EXPECT_LT(eoy.cv.value, ma.cv.value);
    EXPECT_GT(std::abs(eoy.cv.value - ma.cv.value), 0.1);
}

TEST(ReturnStats, ConstantReturns) {
    const std::vector<double> v{5, 5, 5};
    const auto s = return_stats(v);
    EXPECT_EQ(s.mu, 5.0);
    EXPECT_EQ(s.sigma, 0.0);
    EXPECT_TRUE(s.cv.defined);
    EXPECT_EQ(s.cv.value, 0.0);
    EXPECT_EQ(s.risk.value, 0.0);
    EXPECT_EQ(s.n, 3u);
}

TEST(ReturnStats, SampleAndPopulation) {
    const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
    const auto pop = return_stats(v, StdMode::Population);
    const auto smp = return_stats(v, StdMode::Sample);
    EXPECT_DOUBLE_EQ(pop.mu, 5.0);
    EXPECT_DOUBLE_EQ(pop.sigma, 2.0);
    EXPECT_DOUBLE_EQ(smp.sigma, std::sqrt(32.0 / 7.0));
    EXPECT_DOUBLE_EQ(smp.cv.value, smp.sigma / 5.0);
}

TEST(ReturnStats, ZeroMeanHasUndefinedCv) {
    const std::vector<double> v{-3, 3};
    const auto s = return_stats(v);
    EXPECT_FALSE(s.cv.defined);
    EXPECT_NEAR(s.risk.value, 50.0, 1e-12);
}

TEST(ReturnStats, RiskMatchesMuSigma) {
    const std::vector<double> v{12, -4, 30, 7, 18};
    const auto s = return_stats(v);
    EXPECT_EQ(s.risk.value, risk_from_mu_sigma(s.mu, s.sigma).value);
}

TEST(ReturnStats, InsufficientData) {
    const std::vector<double> one{1.0};
    EXPECT_THROW(return_stats(one), InsufficientDataError);
    EXPECT_THROW(return_stats(std::span<const double>{}), InsufficientDataError);
}

TEST(ReturnStats, PublishedCvRounding) {
    EXPECT_EQ(format_half_up(11.67 / 25.02, 2), "0.47");
    EXPECT_EQ(format_half_up(14.38 / -47.54, 2), "-0.30");
}

// Each printed row: round(sigma / mu, 2) reproduces the printed CV.
TEST(ReturnStats, PublishedRowsCvConsistency) {
    std::ifstream in(CVRISK_FIXTURE_DIR "/appendix_sample.csv");
    ASSERT_TRUE(in);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string permno, ticker, s, m, c;
        std::getline(ls, permno, ',');
        std::getline(ls, ticker, ',');
        std::getline(ls, s, ',');
        std::getline(ls, m, ',');
        std::getline(ls, c, ',');
        const double cv = CoefficientOfVariation::of(std::stod(s), std::stod(m)).value;
        EXPECT_NEAR(round_half_up(cv, 2), std::stod(c), 0.01 + 1e-9) << ticker;
        ++rows;
    }
    EXPECT_EQ(rows, 30);
}

// Rows with |mu| printed near zero cannot satisfy the rounded check (the 2-dp
// mean is too coarse), but the printed CV must still lie inside the interval
// implied by the printed sigma and mu.
TEST(ReturnStats, NearZeroMeansIntervalConsistency) {
    std::ifstream in(CVRISK_FIXTURE_DIR "/appendix_near_zero.csv");
    ASSERT_TRUE(in);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string permno, ticker, s, m, c;
        std::getline(ls, permno, ',');
        std::getline(ls, ticker, ',');
        std::getline(ls, s, ',');
        std::getline(ls, m, ',');
        std::getline(ls, c, ',');
        const double sigma = std::stod(s), mu = std::stod(m), printed = std::stod(c);
        const double mlo = mu - 0.005, mhi = mu + 0.005;
        if (mlo <= 0.0 && mhi >= 0.0) {
            SUCCEED() << ticker << ": mean interval contains zero, any CV is admissible";
            continue;
        }
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (double sv : {sigma - 0.005, sigma + 0.005}) {
            for (double mv : {mlo, mhi}) {
                lo = std::min(lo, sv / mv);
                hi = std::max(hi, sv / mv);
            }
        }
        EXPECT_GE(printed, lo - 0.005) << ticker;
        EXPECT_LE(printed, hi + 0.005) << ticker;
    }
}

TEST(ClassifyPerformance, Bands) {
    ReturnSeries flat{ReturnMethod::MonthlyAnnual, {{{2009, 1}, 10.0}, {{2009, 2}, 12.0}}};
    auto stats_with = [](double mu, double sigma) {
        ReturnStats s;
        s.mu = mu;
        s.sigma = sigma;
        s.cv = CoefficientOfVariation::of(sigma, mu);
        s.risk = risk_from_mu_sigma(mu, sigma);
        s.n = 2;
        return s;
    };
    EXPECT_EQ(classify_performance(stats_with(25.02, 11.67), flat).tier, Tier::Strong);
    EXPECT_EQ(classify_performance(stats_with(10, 10), flat).tier, Tier::Strong);
    EXPECT_EQ(classify_performance(stats_with(10, 10.01), flat).tier, Tier::Moderate);
    EXPECT_EQ(classify_performance(stats_with(10, 20), flat).tier, Tier::Moderate);
    EXPECT_EQ(classify_performance(stats_with(10, 20.01), flat).tier, Tier::Elevated);
    EXPECT_EQ(classify_performance(stats_with(0, 5), flat).tier, Tier::Elevated);
    EXPECT_EQ(classify_performance(stats_with(10, 0), flat).tier, Tier::Strong);
    EXPECT_EQ(classify_performance(stats_with(-47.54, 14.38), flat).tier, Tier::NegativeMean);
    EXPECT_EQ(classify_performance(stats_with(-0.01, 500), flat).tier, Tier::NegativeMean);
}

TEST(ClassifyPerformance, TotalOverRandomStats) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mu_d(-100, 100), sig_d(0, 200);
    for (int i = 0; i < 2000; ++i) {
        ReturnStats s;
        s.mu = i % 97 == 0 ? 0.0 : mu_d(rng);
        s.sigma = sig_d(rng);
        s.cv = CoefficientOfVariation::of(s.sigma, s.mu);
        const auto t = classify_performance(s, ReturnSeries{}).tier;
        const int hits = (t == Tier::Strong) + (t == Tier::Moderate) + (t == Tier::Elevated) +
                         (t == Tier::NegativeMean);
        EXPECT_EQ(hits, 1);
        EXPECT_EQ(t == Tier::NegativeMean, s.mu < 0);
    }
}

TEST(ClassifyPerformance, SteadyGrowerIsNotABubble) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> noise(0.0, 0.03);
    std::vector<double> closes{100.0};
    for (int i = 1; i < 132; ++i) closes.push_back(closes.back() * 1.018 * (1.0 + noise(rng)));
    const auto r = monthly_annual_returns(monthly(closes));
    const auto s = return_stats(r);
    const auto t = classify_performance(s, r);
    EXPECT_EQ(t.tier, Tier::Strong);
    EXPECT_FALSE(t.bubble_flag);
    EXPECT_LT(t.max_return, 100.0);
}

TEST(ClassifyPerformance, TrendingRunUpIsABubble) {
    // Returns climbing 3 points a month from -60 % to +150 %, mean about 45 %.
    ReturnSeries r{ReturnMethod::MonthlyAnnual, {}};
    for (int i = 0; i < 71; ++i) {
        r.observations.push_back({YearMonth{2015, 1}.plus_months(i), -60.0 + 3.0 * i});
    }
    const auto s = return_stats(r);
    const auto t = classify_performance(s, r);
    EXPECT_NEAR(t.trend_slope, 3.0, 1e-9);
    EXPECT_GT(t.max_return, 100.0);
    EXPECT_TRUE(t.bubble_flag);
    EXPECT_EQ(t.tier, Tier::Moderate);  // CV = 61.9 / 45 ~ 1.38
}

TEST(ClassifyPerformance, HighReturnsWithoutTrendAreNotFlagged) {
    ReturnSeries r{ReturnMethod::MonthlyAnnual, {}};
    for (int i = 0; i < 48; ++i) {
        r.observations.push_back({YearMonth{2010, 1}.plus_months(i), i % 2 ? 150.0 : 20.0});
    }
    const auto t = classify_performance(return_stats(r), r);
    EXPECT_GT(t.max_return, 100.0);
    EXPECT_FALSE(t.bubble_flag);

    ClassifierConfig loose;
    loose.slope_threshold = 0.0;
    EXPECT_TRUE(classify_performance(return_stats(r), r, loose).bubble_flag);
}

TEST(DensityGrid, SingleObservation) {
    std::vector<ReturnSeries> all{{ReturnMethod::MonthlyAnnual, {{{2010, 5}, 50.0}}}};
    const auto g = return_density_grid(all, 4, 10, -100, 200);
    EXPECT_EQ(g.total(), 1u);
    EXPECT_EQ(g.at(0, 5), 1u);
    EXPECT_EQ(g.first_month, (YearMonth{2010, 5}));
}

TEST(DensityGrid, EmptyInputIsAllZero) {
    const auto g = return_density_grid({}, 3, 3, -1, 1);
    EXPECT_EQ(g.total(), 0u);
    EXPECT_FALSE(g.first_month.has_value());
}

TEST(DensityGrid, Conservation) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> ret(10, 80);
    std::vector<ReturnSeries> all(5);
    std::size_t in_range = 0;
    for (auto& s : all) {
        for (int i = 0; i < 100; ++i) {
            const double v = ret(rng);
            s.observations.push_back({YearMonth{2009, 1}.plus_months(i), v});
            in_range += v >= -100 && v <= 100;
        }
    }
    const auto g = return_density_grid(all, 7, 13, -100, 100);
    EXPECT_EQ(g.total(), in_range);
}

TEST(DensityGrid, UpperEdgeCountedInLastBin) {
    std::vector<ReturnSeries> all{{ReturnMethod::MonthlyAnnual,
                                   {{{2010, 1}, 100.0}, {{2010, 2}, -100.0}}}};
    const auto g = return_density_grid(all, 1, 4, -100, 100);
    EXPECT_EQ(g.at(0, 3), 1u);
    EXPECT_EQ(g.at(0, 0), 1u);
}

TEST(DensityGrid, LowCvCohortConcentratedWithinFifty) {
    std::mt19937_64 rng(20);
    std::normal_distribution<double> ret(20.0, 15.0);  // CV 0.75
    std::vector<ReturnSeries> all(30);
    for (auto& s : all) {
        for (int i = 0; i < 120; ++i) {
            s.observations.push_back({YearMonth{2009, 1}.plus_months(i), ret(rng)});
        }
        ASSERT_LE(return_stats(s).cv.value, 1.0);
    }
    const auto g = return_density_grid(all, 10, 20, -100, 100);  // 10-point bins
    std::size_t within = 0;
    for (std::size_t t = 0; t < g.time_bins(); ++t) {
        for (std::size_t r = 5; r < 15; ++r) within += g.at(t, r);
    }
    EXPECT_GE(static_cast<double>(within) / static_cast<double>(g.total()), 0.90);
}

TEST(DensityGrid, InvalidShape) {
    EXPECT_THROW(return_density_grid({}, 0, 3, 0, 1), DomainError);
    EXPECT_THROW(return_density_grid({}, 3, 0, 0, 1), DomainError);
    EXPECT_THROW(return_density_grid({}, 3, 3, 1, 1), DomainError);
}
