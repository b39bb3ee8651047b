#pragma once

// Hybrid stochastic/robust machinery. Uncertain parameters are modelled as
// normally distributed around their forecasts; a constraint is tightened by
// phi * omega * forecast and relaxed by mu * max(1, |forecast|), where omega is
// the standard-normal quantile at the requested reliability level.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "error.hpp"

namespace gridxpand {

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

/// Inverse standard normal CDF: Acklam's rational approximation followed by two
/// Newton steps against the erfc-based CDF, which brings it to ~1e-15.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ModelError("normal_quantile: probability must lie in (0, 1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= 1 - plow) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    for (int i = 0; i < 2; ++i) {
        double pdf = normal_pdf(x);
        if (pdf <= 0) break;
        x -= (normal_cdf(x) - p) / pdf;
    }
    return x;
}

/// omega = Phi^-1(1 - reliability).
inline double omega_from_reliability(double reliability) {
    if (!(reliability > 0.0 && reliability < 1.0))
        throw ModelError("reliability level must lie in (0, 1)");
    if (reliability == 0.5) return 0.0;
    return normal_quantile(1.0 - reliability);
}

/// Uncertainty level, infeasibility tolerance and reliability. omega is derived once.
class RobustParams {
public:
    RobustParams() = default;
    RobustParams(double phi, double mu, double reliability)
        : phi_(phi), mu_(mu), reliability_(reliability) {
        if (!(phi >= 0)) throw ModelError("uncertainty level phi must be >= 0");
        if (!(mu >= 0)) throw ModelError("infeasibility tolerance mu must be >= 0");
        if (!(reliability > 0 && reliability <= 0.5))
            throw ModelError("reliability level must lie in (0, 0.5]");
        omega_ = omega_from_reliability(reliability);
    }

    /// Deterministic limit: phi = mu = 0.
    static RobustParams deterministic() { return RobustParams(0.0, 0.0, 0.5); }

    double phi() const noexcept { return phi_; }
    double mu() const noexcept { return mu_; }
    double reliability() const noexcept { return reliability_; }
    double omega() const noexcept { return omega_; }
    double phi_omega() const noexcept { return phi_ * omega_; }

private:
    double phi_ = 0.0;
    double mu_ = 0.0;
    double reliability_ = 0.5;
    double omega_ = 0.0;
};

struct NormalApprox {
    double mean = 0.0;
    double std_dev = 0.0;
};

/// P(X = x) for X ~ Binomial(n, rho), evaluated in log space.
inline double binomial_pmf(long n, long x, double rho) {
    if (n < 0 || x < 0) throw ModelError("binomial_pmf: counts must be non-negative");
    if (x > n) throw ModelError("binomial_pmf: x must not exceed n");
    if (!(rho >= 0.0 && rho <= 1.0)) throw ModelError("binomial_pmf: rho must lie in [0, 1]");
    if (rho == 0.0) return x == 0 ? 1.0 : 0.0;
    if (rho == 1.0) return x == n ? 1.0 : 0.0;
    const double q = 1.0 - rho;
    // Grouped so that (n, x, rho) and (n, n - x, 1 - rho) evaluate the same operands.
    const double log_choose =
        std::lgamma(static_cast<double>(n) + 1.0) -
        (std::lgamma(static_cast<double>(x) + 1.0) + std::lgamma(static_cast<double>(n - x) + 1.0));
    const double log_tail = static_cast<double>(x) * std::log(rho) + static_cast<double>(n - x) * std::log(q);
    return std::exp(log_choose + log_tail);
}

inline NormalApprox binomial_normal_approx(long n, double rho) {
    if (n < 1) throw ModelError("binomial_normal_approx: n must be >= 1");
    const double nn = static_cast<double>(n);
    return {nn * rho, std::sqrt(nn * rho * (1.0 - rho))};
}

struct RobustMargin {
    double tighten = 0.0;  // phi * omega * forecast
    double relax = 0.0;    // mu * max(1, |forecast|)
};

/// Margins applied to a constraint whose uncertain term has the given forecast.
/// The forecast is a parameter, so max(1, |.|) is evaluated here rather than in the model.
inline RobustMargin robust_margin(double forecast, const RobustParams& p) {
    return {p.phi_omega() * forecast, p.mu() * std::max(1.0, std::abs(forecast))};
}

/// One row of a generic robust constraint: sum f_t n_t + sum p_v m_v <= j.
struct UncertainRow {
    std::vector<double> f;  // forecasts of continuous coefficients
    std::vector<double> p;  // forecasts of binary coefficients
    double rhs = 0.0;       // forecast of j
};

/// Signed slack (lhs - rhs) of the full conic robust counterpart at a fixed solution,
/// including the square-root term. Non-positive means the row holds. Audit use only;
/// unlike RobustParams, any omega (reliability above one half included) is accepted.
inline double eq15_audit(const UncertainRow& row, std::span<const double> n, std::span<const double> m,
                         double phi, double omega, double mu) {
    if (n.size() != row.f.size() || m.size() != row.p.size())
        throw ModelError("eq15_audit: solution size does not match the row");
    double linear = 0.0, squares = 0.0;
    for (std::size_t t = 0; t < n.size(); ++t) {
        linear += row.f[t] * n[t];
        squares += row.f[t] * row.f[t] * n[t] * n[t];
    }
    for (std::size_t v = 0; v < m.size(); ++v) {
        linear += row.p[v] * m[v];
        squares += row.p[v] * row.p[v] * m[v];
    }
    squares += row.rhs * row.rhs;
    const double lhs = linear + phi * omega * std::sqrt(squares);
    const double rhs = row.rhs + mu * std::max(1.0, std::abs(row.rhs));
    return lhs - rhs;
}

inline double eq15_audit(const UncertainRow& row, std::span<const double> n, std::span<const double> m,
                         const RobustParams& params) {
    return eq15_audit(row, n, m, params.phi(), params.omega(), params.mu());
}

}  // namespace gridxpand
