#pragma once

/**
 * @file portfolio_frontier.hpp
 * @brief Portfolio mean, variance and CV, and two-asset frontier sweeps.
 *
 * Variance of an n-security portfolio:
 *
 *     sigma_p^2 = sum_i w_i^2 sigma_i^2 + sum_{i != j} w_i w_j rho_ij sigma_i sigma_j
 *
 * and for two securities it collapses to
 *
 *     sigma_p^2 = w^2 s1^2 + (1-w)^2 s2^2 + 2 w (1-w) rho s1 s2.
 *
 * Each frontier row carries the portfolio CV and the matching risk of a
 * negative return.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cvrisk/risk_math.hpp"

namespace cvrisk {

/// Expected return and volatility of one security, both in percent.
struct SecurityParams {
    double mu = 0.0;
    double sigma = 0.0;
};

/// Symmetric, unit-diagonal matrix with entries in [-1, 1].
/// Positive semi-definiteness is not checked here; portfolio_variance rejects
/// weightings that produce a clearly negative variance.
class CorrelationMatrix {
public:
    /// Row-major n*n entries. Throws DomainError on any violated invariant.
    CorrelationMatrix(std::size_t n, std::vector<double> entries);

    static CorrelationMatrix identity(std::size_t n);
    /// All off-diagonal entries equal to `rho`.
    static CorrelationMatrix uniform(std::size_t n, double rho);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> entries_;
};

enum class WeightMode { LongOnly, AllowShort };

/// Portfolio weights summing to 1 within 1e-9; non-negative in LongOnly mode.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> weights, WeightMode mode = WeightMode::LongOnly);

    std::span<const double> values() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }

private:
    std::vector<double> weights_;
};

/// sigma_p^2 in percent^2. Values in [-1e-9, 0) are clamped to 0; anything
/// lower means the correlation matrix is not a valid one and throws.
double portfolio_variance(const WeightVector& weights, std::span<const SecurityParams> secs,
                          const CorrelationMatrix& corr);

struct PortfolioMoments {
    double mu = 0.0;
    double sigma = 0.0;
    CoefficientOfVariation cv;
};

PortfolioMoments portfolio_cv(const WeightVector& weights, std::span<const SecurityParams> secs,
                              const CorrelationMatrix& corr);

/// Closed-form two-asset volatility. w1 must lie in [0, 1] unless
/// `mode` allows shorting.
double two_asset_sigma(double w1, const SecurityParams& sec1, const SecurityParams& sec2,
                       double rho, WeightMode mode = WeightMode::LongOnly);

struct FrontierRow {
    double w1 = 0.0;
    double w2 = 0.0;
    double sigma = 0.0;
    double mu = 0.0;
    CoefficientOfVariation cv;
    RiskPercent risk;
};

/// The set of w1 values a sweep visits.
class WeightGrid {
public:
    /// 0, step, 2*step, ..., 1 (1 always included). Requires 0 < step <= 0.5.
    static WeightGrid uniform(double step);
    /// {0.00, 0.10, 0.15, 0.20, ..., 1.00}: the 20-row layout of the
    /// published frontier tables (0.05 is absent, 0.15 present).
    static WeightGrid published();
    /// Arbitrary weights; each must be finite.
    static WeightGrid custom(std::vector<double> weights);

    std::span<const double> weights() const noexcept { return weights_; }

private:
    explicit WeightGrid(std::vector<double> w) : weights_(std::move(w)) {}
    std::vector<double> weights_;
};

/// One row per grid weight. Throws DomainError for |rho| > 1.
std::vector<FrontierRow> two_asset_frontier(const SecurityParams& sec1,
                                            const SecurityParams& sec2, double rho,
                                            const WeightGrid& grid,
                                            WeightMode mode = WeightMode::LongOnly);
std::vector<FrontierRow> two_asset_frontier(const SecurityParams& sec1,
                                            const SecurityParams& sec2, double rho,
                                            double w_step);

enum class FrontierCriterion { MinSigma, MinCv, MinRisk };

/// Row minimizing the criterion; ties go to the smallest w1. For MinCv, rows
/// with undefined CV never win. Throws DomainError on an empty frontier.
FrontierRow min_risk_row(std::span<const FrontierRow> frontier, FrontierCriterion criterion);

struct TradeoffRow {
    double mu = 0.0;
    RiskPercent risk;
    /// (risk_i - risk_{i-1}) / (mu_i - mu_{i-1}); empty on the first row and
    /// where mu does not change.
    std::optional<double> marginal_risk_per_return;
};

/// Requires >= 2 rows sorted by non-decreasing mu; throws DomainError otherwise.
std::vector<TradeoffRow> risk_return_tradeoff_report(std::span<const FrontierRow> frontier);

}  // namespace cvrisk
