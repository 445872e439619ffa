#include "cvrisk/portfolio_frontier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvrisk/errors.hpp"

namespace cvrisk {
namespace {

constexpr double kWeightSumTolerance = 1e-9;
constexpr double kNegativeVarianceTolerance = 1e-9;

void require_rho(double rho) {
    if (!(std::abs(rho) <= 1.0)) {
        throw DomainError("correlation must lie in [-1, 1], got " + std::to_string(rho));
    }
}

void require_security(const SecurityParams& s) {
    if (!std::isfinite(s.mu) || !std::isfinite(s.sigma) || s.sigma < 0.0) {
        throw DomainError("security needs finite mu and sigma >= 0");
    }
}

RiskPercent row_risk(double mu, double sigma, const CoefficientOfVariation& cv) {
    return cv.defined ? risk_probability(cv) : risk_from_mu_sigma(mu, sigma);
}

}  // namespace

CorrelationMatrix::CorrelationMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_) {
        throw DomainError("correlation matrix needs " + std::to_string(n_ * n_) + " entries, got " +
                          std::to_string(entries_.size()));
    }
    for (std::size_t i = 0; i < n_; ++i) {
        if ((*this)(i, i) != 1.0) {
            throw DomainError("correlation matrix diagonal must be 1");
        }
        for (std::size_t j = 0; j < n_; ++j) {
            require_rho((*this)(i, j));
            if ((*this)(i, j) != (*this)(j, i)) {
                throw DomainError("correlation matrix must be symmetric");
            }
        }
    }
}

CorrelationMatrix CorrelationMatrix::identity(std::size_t n) { return uniform(n, 0.0); }

CorrelationMatrix CorrelationMatrix::uniform(std::size_t n, double rho) {
    std::vector<double> e(n * n, rho);
    for (std::size_t i = 0; i < n; ++i) {
        e[i * n + i] = 1.0;
    }
    return CorrelationMatrix(n, std::move(e));
}

WeightVector::WeightVector(std::vector<double> weights, WeightMode mode)
    : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw DomainError("weight vector is empty");
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w)) {
            throw DomainError("weights must be finite");
        }
        if (mode == WeightMode::LongOnly && w < 0.0) {
            throw DomainError("negative weight " + std::to_string(w) + " in long-only mode");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
        throw DomainError("weights sum to " + std::to_string(sum) + ", expected 1");
    }
}

double portfolio_variance(const WeightVector& weights, std::span<const SecurityParams> secs,
                          const CorrelationMatrix& corr) {
    const auto n = weights.size();
    if (secs.size() != n || corr.size() != n) {
        throw DomainError("dimension mismatch: " + std::to_string(n) + " weights, " +
                          std::to_string(secs.size()) + " securities, " +
                          std::to_string(corr.size()) + "x" + std::to_string(corr.size()) +
                          " correlations");
    }
    for (const auto& s : secs) {
        require_security(s);
    }

    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        var += weights[i] * weights[i] * secs[i].sigma * secs[i].sigma;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            var += 2.0 * weights[i] * weights[j] * corr(i, j) * secs[i].sigma * secs[j].sigma;
        }
    }
    if (var < 0.0) {
        if (var < -kNegativeVarianceTolerance) {
            throw DomainError("portfolio variance " + std::to_string(var) +
                              " is negative: correlation matrix is not positive semi-definite");
        }
        var = 0.0;
    }
    return var;
}

PortfolioMoments portfolio_cv(const WeightVector& weights, std::span<const SecurityParams> secs,
                              const CorrelationMatrix& corr) {
    const double var = portfolio_variance(weights, secs, corr);
    PortfolioMoments m;
    for (std::size_t i = 0; i < secs.size(); ++i) {
        m.mu += weights[i] * secs[i].mu;
    }
    m.sigma = std::sqrt(var);
    m.cv = CoefficientOfVariation::of(m.sigma, m.mu);
    return m;
}

double two_asset_sigma(double w1, const SecurityParams& sec1, const SecurityParams& sec2,
                       double rho, WeightMode mode) {
    require_rho(rho);
    require_security(sec1);
    require_security(sec2);
    if (!std::isfinite(w1)) {
        throw DomainError("w1 must be finite");
    }
    if (mode == WeightMode::LongOnly && (w1 < 0.0 || w1 > 1.0)) {
        throw DomainError("w1 = " + std::to_string(w1) + " outside [0, 1] in long-only mode");
    }
    const double w2 = 1.0 - w1;
    const double var = w1 * w1 * sec1.sigma * sec1.sigma + w2 * w2 * sec2.sigma * sec2.sigma +
                       2.0 * w1 * w2 * rho * sec1.sigma * sec2.sigma;
    // With |rho| <= 1 the exact value is a square; only rounding goes below 0.
    return std::sqrt(std::max(var, 0.0));
}

WeightGrid WeightGrid::uniform(double step) {
    if (!(step > 0.0) || step > 0.5) {
        throw DomainError("weight step must lie in (0, 0.5], got " + std::to_string(step));
    }
    std::vector<double> w;
    const auto count = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) {
        w.push_back(std::min(1.0, static_cast<double>(k) * step));
    }
    if (w.back() < 1.0 - 1e-12) {
        w.push_back(1.0);
    } else {
        w.back() = 1.0;
    }
    return WeightGrid(std::move(w));
}

WeightGrid WeightGrid::published() {
    std::vector<double> w{0.0, 0.10};
    for (int hundredths = 15; hundredths <= 100; hundredths += 5) {
        w.push_back(hundredths / 100.0);
    }
    return WeightGrid(std::move(w));
}

WeightGrid WeightGrid::custom(std::vector<double> weights) {
    if (weights.empty()) {
        throw DomainError("weight grid is empty");
    }
    for (double x : weights) {
        if (!std::isfinite(x)) {
            throw DomainError("weight grid entries must be finite");
        }
    }
    return WeightGrid(std::move(weights));
}

std::vector<FrontierRow> two_asset_frontier(const SecurityParams& sec1,
                                            const SecurityParams& sec2, double rho,
                                            const WeightGrid& grid, WeightMode mode) {
    require_rho(rho);
    std::vector<FrontierRow> rows;
    rows.reserve(grid.weights().size());
    for (double w1 : grid.weights()) {
        FrontierRow row;
        row.w1 = w1;
        row.w2 = 1.0 - w1;
        row.sigma = two_asset_sigma(w1, sec1, sec2, rho, mode);
        row.mu = w1 * sec1.mu + row.w2 * sec2.mu;
        row.cv = CoefficientOfVariation::of(row.sigma, row.mu);
        row.risk = row_risk(row.mu, row.sigma, row.cv);
        rows.push_back(row);
    }
    return rows;
}

std::vector<FrontierRow> two_asset_frontier(const SecurityParams& sec1,
                                            const SecurityParams& sec2, double rho,
                                            double w_step) {
    return two_asset_frontier(sec1, sec2, rho, WeightGrid::uniform(w_step));
}

FrontierRow min_risk_row(std::span<const FrontierRow> frontier, FrontierCriterion criterion) {
    if (frontier.empty()) {
        throw DomainError("min_risk_row: frontier is empty");
    }
    auto key = [criterion](const FrontierRow& r) -> std::optional<double> {
        switch (criterion) {
            case FrontierCriterion::MinSigma: return r.sigma;
            case FrontierCriterion::MinCv:
                return r.cv.defined ? std::optional<double>(r.cv.value) : std::nullopt;
            case FrontierCriterion::MinRisk: return r.risk.value;
        }
        return std::nullopt;
    };

    const FrontierRow* best = nullptr;
    std::optional<double> best_key;
    for (const auto& row : frontier) {
        const auto k = key(row);
        if (!k) {
            continue;
        }
        if (!best_key || *k < *best_key || (*k == *best_key && row.w1 < best->w1)) {
            best = &row;
            best_key = k;
        }
    }
    if (best == nullptr) {
        throw DomainError("min_risk_row: no row has a defined criterion value");
    }
    return *best;
}

std::vector<TradeoffRow> risk_return_tradeoff_report(std::span<const FrontierRow> frontier) {
    if (frontier.size() < 2) {
        throw DomainError("trade-off report needs at least 2 frontier rows");
    }
    std::vector<TradeoffRow> out;
    out.reserve(frontier.size());
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        TradeoffRow row{frontier[i].mu, frontier[i].risk, std::nullopt};
        if (i > 0) {
            const double dmu = frontier[i].mu - frontier[i - 1].mu;
            if (dmu < 0.0) {
                throw DomainError("trade-off report needs rows sorted by expected return");
            }
            if (dmu > 0.0) {
                row.marginal_risk_per_return =
                    (frontier[i].risk.value - frontier[i - 1].risk.value) / dmu;
            }
        }
        out.push_back(row);
    }
    return out;
}

}  // namespace cvrisk
