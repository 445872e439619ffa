#pragma once

/**
 * @file risk_math.hpp
 * @brief Risk as the probability of a negative return under a normal model.
 *
 * For returns distributed N(mu, sigma^2), the chance of a loss is
 *
 *     P(R < 0) = 1/2 [1 + erf(-mu / (sigma sqrt 2))]
 *
 * and since only the ratio sigma/mu enters, it is a function of the
 * coefficient of variation alone:
 *
 *     risk(CV) = 100 * 1/2 [1 + erf(-1 / (CV sqrt 2))]   (percent)
 *
 * All mu, sigma and risk values are in percent units.
 *
 * Every function here is pure and thread-safe.
 */

#include <cmath>
#include <compare>
#include <cstddef>
#include <vector>

namespace cvrisk {

/// Probability of a negative return, in percent, 0..100.
struct RiskPercent {
    double value = 0.0;

    friend constexpr auto operator<=>(const RiskPercent&, const RiskPercent&) = default;
};

/// sigma / mu. `defined` is false exactly when mu == 0; `value` is then NaN.
///
/// A zero CV keeps the sign of mu in its sign bit (0/+mu = +0, 0/-mu = -0),
/// so the zero-volatility limit of the risk is recoverable from the CV.
struct CoefficientOfVariation {
    double value = 0.0;
    bool defined = true;

    static CoefficientOfVariation of(double sigma, double mu) noexcept {
        if (mu == 0.0) {
            return undefined();
        }
        return {sigma / mu, true};
    }

    static CoefficientOfVariation undefined() noexcept { return {std::nan(""), false}; }
};

/// erf(x) via W. J. Cody's rational Chebyshev approximations.
/// Max absolute error is far below 1e-7 on the whole real line; exactly odd.
/// Throws DomainError for NaN or infinite x.
double erf_approx(double x);

/// 1 - erf(x), evaluated without cancellation for large x. Same domain rules.
double erfc_approx(double x);

/// Risk from a coefficient of variation. Strictly increasing for CV > 0,
/// tending to 50 as CV grows. Throws DomainError when the CV is undefined
/// (mu == 0); use risk_from_mu_sigma in that case.
RiskPercent risk_probability(CoefficientOfVariation cv);

/// Risk from mean and volatility. sigma == 0 yields the degenerate limits
/// 0 (mu > 0), 100 (mu < 0) or 50 (mu == 0). Throws DomainError for sigma < 0.
RiskPercent risk_from_mu_sigma(double mu, double sigma);

/// Same quantity by adaptive Gauss-Kronrod integration of the normal pdf over
/// (-inf, 0], truncated 10 sigma below the mean. `tol` is the absolute
/// tolerance on the percent result, 0 < tol <= 1e-4.
///
/// Independent of erf; used as an oracle for the closed form.
/// Throws DomainError for bad arguments and NumericError if the subdivision
/// cap is hit before reaching `tol`.
RiskPercent risk_by_integration(double mu, double sigma, double tol);

struct RiskCurvePoint {
    double sigma = 0.0;
    RiskPercent risk;
};

/// Risk on an evenly spaced sigma grid, endpoints included. Requires
/// mu != 0, 0 <= sigma_min < sigma_max and n_points >= 2.
std::vector<RiskCurvePoint> risk_curve(double mu, double sigma_min, double sigma_max,
                                       std::size_t n_points);

/// Upper sigma of the region 0 <= CV <= 0.25, where risk stays below 0.01
/// percentage points: 0.25 * mu. Throws DomainError for mu <= 0.
double risk_free_max_sigma(double mu);

/// CV bound of the practically risk-free region.
inline constexpr double kRiskFreeCvBound = 0.25;

}  // namespace cvrisk
