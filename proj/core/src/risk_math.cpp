#include "cvrisk/risk_math.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cvrisk/errors.hpp"

namespace cvrisk {
namespace {

// Cody, "Rational Chebyshev approximations for the error function",
// Math. Comp. 23 (1969). Coefficients from the netlib specfun CALERF routine.
constexpr std::array<double, 5> kA = {3.16112374387056560e00, 1.13864154151050156e02,
                                      3.77485237685302021e02, 3.20937758913846947e03,
                                      1.85777706184603153e-1};
constexpr std::array<double, 4> kB = {2.36012909523441209e01, 2.44024637934444173e02,
                                      1.28261652607737228e03, 2.84423683343917062e03};
constexpr std::array<double, 9> kC = {5.64188496988670089e-1, 8.88314979438837594e00,
                                      6.61191906371416295e01, 2.98635138197400131e02,
                                      8.81952221241769090e02, 1.71204761263407058e03,
                                      2.05107837782607147e03, 1.23033935479799725e03,
                                      2.15311535474403846e-8};
constexpr std::array<double, 8> kD = {1.57449261107098347e01, 1.17693950891312499e02,
                                      5.37181101862009858e02, 1.62138957456669019e03,
                                      3.29079923573345963e03, 4.36261909014324716e03,
                                      3.43936767414372164e03, 1.23033935480374942e03};
constexpr std::array<double, 6> kP = {3.05326634961232344e-1, 3.60344899949804439e-1,
                                      1.25781726111229246e-1, 1.60837851487422766e-2,
                                      6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kQ = {2.56852019228982242e00, 1.87295284992346047e00,
                                      5.27905102951428412e-1, 6.05183413124413191e-2,
                                      2.33520497626869185e-3};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kSmallThreshold = 0.46875;
constexpr double kXSmall = 1.11e-16;
// erfc(x) underflows to zero beyond this.
constexpr double kXBig = 26.543;

// erf(y) for 0 <= y <= 0.46875.
double erf_small(double y) {
    const double ysq = y > kXSmall ? y * y : 0.0;
    double num = kA[4] * ysq;
    double den = ysq;
    for (int i = 0; i < 3; ++i) {
        num = (num + kA[i]) * ysq;
        den = (den + kB[i]) * ysq;
    }
    return y * (num + kA[3]) / (den + kB[3]);
}

// exp(-y^2) split to keep precision: y = ysq + del with ysq on a 1/16 grid.
double scaled_gauss(double y) {
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del);
}

// erfc(y) for y > 0.46875.
double erfc_large(double y) {
    if (y <= 4.0) {
        double num = kC[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kC[i]) * y;
            den = (den + kD[i]) * y;
        }
        return scaled_gauss(y) * (num + kC[7]) / (den + kD[7]);
    }
    if (y >= kXBig) {
        return 0.0;
    }
    const double ysq = 1.0 / (y * y);
    double num = kP[5] * ysq;
    double den = ysq;
    for (int i = 0; i < 4; ++i) {
        num = (num + kP[i]) * ysq;
        den = (den + kQ[i]) * ysq;
    }
    double r = ysq * (num + kP[4]) / (den + kQ[4]);
    r = (kInvSqrtPi - r) / y;
    return scaled_gauss(y) * r;
}

void require_finite(double x, const char* fn) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(fn) + ": argument must be finite");
    }
}

// 50 * erfc(z) with z = mu / (sigma sqrt 2) possibly infinite.
RiskPercent risk_from_ratio(double z) {
    if (std::isinf(z)) {
        return RiskPercent{z > 0 ? 0.0 : 100.0};
    }
    return RiskPercent{50.0 * erfc_approx(z)};
}

// Gauss-Kronrod 7/15 nodes on [-1, 1] (non-negative half) and weights.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

double standard_normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

Segment gauss_kronrod(double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = standard_normal_pdf(center);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double sum = standard_normal_pdf(center - dx) + standard_normal_pdf(center + dx);
        kronrod += kKronrodWeights[i] * sum;
        if (i % 2 == 1) {
            gauss += kGaussWeights[i / 2] * sum;
        }
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

constexpr std::size_t kMaxSegments = 2000;
constexpr double kTruncationSigmas = 10.0;

}  // namespace

double erf_approx(double x) {
    require_finite(x, "erf_approx");
    const double y = std::abs(x);
    const double r = y <= kSmallThreshold ? erf_small(y) : 1.0 - erfc_large(y);
    return std::signbit(x) ? -r : r;
}

double erfc_approx(double x) {
    require_finite(x, "erfc_approx");
    const double y = std::abs(x);
    if (y <= kSmallThreshold) {
        const double e = erf_small(y);
        return x < 0 ? 1.0 + e : 1.0 - e;
    }
    const double r = erfc_large(y);
    return x < 0 ? 2.0 - r : r;
}

RiskPercent risk_probability(CoefficientOfVariation cv) {
    if (!cv.defined || std::isnan(cv.value)) {
        throw DomainError(
            "risk_probability: CV is undefined (mean return is zero); "
            "use risk_from_mu_sigma instead");
    }
    if (cv.value == 0.0) {
        return RiskPercent{std::signbit(cv.value) ? 100.0 : 0.0};
    }
    return risk_from_ratio(1.0 / (cv.value * std::numbers::sqrt2));
}

RiskPercent risk_from_mu_sigma(double mu, double sigma) {
    require_finite(mu, "risk_from_mu_sigma");
    if (std::isnan(sigma) || sigma < 0.0) {
        throw DomainError("risk_from_mu_sigma: sigma must be >= 0");
    }
    if (std::isinf(sigma)) {
        return RiskPercent{50.0};
    }
    if (sigma == 0.0) {
        if (mu > 0.0) return RiskPercent{0.0};
        if (mu < 0.0) return RiskPercent{100.0};
        return RiskPercent{50.0};
    }
    return risk_from_ratio(mu / (sigma * std::numbers::sqrt2));
}

RiskPercent risk_by_integration(double mu, double sigma, double tol) {
    require_finite(mu, "risk_by_integration");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("risk_by_integration: sigma must be positive and finite");
    }
    if (!(tol > 0.0) || tol > 1e-4) {
        throw DomainError("risk_by_integration: tol must lie in (0, 1e-4]");
    }

    // Standardize: P(X < 0) = integral of phi(z) for z from -10 to -mu/sigma.
    // Past +10 the remaining mass (< 1e-23) is below any admissible tol.
    const double lower = -kTruncationSigmas;
    const double upper = std::min(-mu / sigma, kTruncationSigmas);
    if (upper <= lower) {
        return RiskPercent{0.0};
    }

    const double prob_tol = tol / 100.0;
    std::vector<Segment> segments{gauss_kronrod(lower, upper)};
    double total = segments.front().value;
    double error = segments.front().error;
    while (error > prob_tol) {
        if (segments.size() >= kMaxSegments) {
            throw NumericError("risk_by_integration: no convergence after " +
                                   std::to_string(kMaxSegments) +
                                   " segments; achieved error " + std::to_string(error * 100.0) +
                                   " pp",
                               error * 100.0);
        }
        const auto worst = static_cast<std::size_t>(
            std::max_element(segments.begin(), segments.end(),
                             [](const Segment& l, const Segment& r) { return l.error < r.error; }) -
            segments.begin());
        const Segment parent = segments[worst];
        const double mid = 0.5 * (parent.a + parent.b);
        const Segment left = gauss_kronrod(parent.a, mid);
        const Segment right = gauss_kronrod(mid, parent.b);
        segments[worst] = left;
        segments.push_back(right);
        total += left.value + right.value - parent.value;
        error += left.error + right.error - parent.error;
        // Guard against drift in the running sums.
        if (error <= prob_tol) {
            total = 0.0;
            error = 0.0;
            for (const auto& s : segments) {
                total += s.value;
                error += s.error;
            }
        }
    }
    return RiskPercent{std::clamp(100.0 * total, 0.0, 100.0)};
}

std::vector<RiskCurvePoint> risk_curve(double mu, double sigma_min, double sigma_max,
                                       std::size_t n_points) {
    if (mu == 0.0 || !std::isfinite(mu)) {
        throw DomainError("risk_curve: mu must be finite and non-zero");
    }
    if (!(sigma_min >= 0.0) || !(sigma_min < sigma_max) || !std::isfinite(sigma_max)) {
        throw DomainError("risk_curve: need 0 <= sigma_min < sigma_max");
    }
    if (n_points < 2) {
        throw DomainError("risk_curve: need at least 2 points");
    }
    std::vector<RiskCurvePoint> curve;
    curve.reserve(n_points);
    const double step = (sigma_max - sigma_min) / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double sigma =
            i + 1 == n_points ? sigma_max : sigma_min + step * static_cast<double>(i);
        curve.push_back({sigma, risk_from_mu_sigma(mu, sigma)});
    }
    return curve;
}

double risk_free_max_sigma(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw DomainError("risk_free_max_sigma: mu must be positive");
    }
    return kRiskFreeCvBound * mu;
}

}  // namespace cvrisk
