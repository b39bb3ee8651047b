#pragma once

// Steady-state conductor heat balance, per metre of line:
//   I^2 R + Q_solar = Q_convection + Q_radiation.
// Currents are in A, resistances in ohm/m, heats in W/m, temperatures in K.

#include <algorithm>
#include <cmath>
#include <optional>

#include "core_model.hpp"
#include "error.hpp"
#include "linearize.hpp"

namespace gridxpand {

inline constexpr double kTemperatureCap = 2000.0;  // K, bisection bracket top
inline constexpr double kBisectionTol = 1e-6;      // K

/// D v rho / nu.
inline double reynolds(double diameter, double wind, double air_density, double air_viscosity) {
    if (!(diameter > 0.0) || !(air_density > 0.0) || !(air_viscosity > 0.0))
        throw ModelError("reynolds: diameter, air density and viscosity must be positive");
    if (wind < 0.0) throw ModelError("reynolds: wind speed must be non-negative");
    return diameter * wind * air_density / air_viscosity;
}

struct ConvectionCoeffs {
    double k_prime = 0.0;         // W/(m K), low-Reynolds correlation
    double k_double_prime = 0.0;  // W/(m K), high-Reynolds correlation
    double reynolds = 0.0;

    double k_max() const { return std::max(k_prime, k_double_prime); }
};

inline ConvectionCoeffs convection_coeffs(double wind_angle_coeff, double re, double thermal_conductivity) {
    if (re < 0.0) throw ModelError("convection_coeffs: Reynolds number must be non-negative");
    return {wind_angle_coeff * (1.01 + 1.35 * std::pow(re, 0.52)) * thermal_conductivity,
            wind_angle_coeff * 0.754 * std::pow(re, 0.5) * thermal_conductivity, re};
}

inline ConvectionCoeffs convection_coeffs(const ConductorSpec& c, const WeatherRecord& w) {
    const double re = reynolds(c.diameter, w.wind_mps, c.air_density, c.air_viscosity);
    return convection_coeffs(c.wind_angle_coeff, re, c.thermal_conductivity);
}

inline double forced_convection(double k, double t, double ambient) {
    if (t < ambient) throw ModelError("forced_convection: conductor below ambient");
    return k * (t - ambient);
}

/// Still-air convection with a user-supplied coefficient (W/(m K^1.25)).
inline double natural_convection(double coeff, double t, double ambient) {
    if (t < ambient) throw ModelError("natural_convection: conductor below ambient");
    return coeff * std::pow(t - ambient, 1.25);
}

inline double radiation_loss(double emissivity, double kr, double t, double ambient) {
    if (!(ambient > 0.0) || t < ambient) throw ModelError("radiation_loss: need t >= ambient > 0");
    return emissivity * kr * (std::pow(t, 4) - std::pow(ambient, 4));
}

inline double resistance_at(double t, double r_ref, double t_ref, double per_kelvin) {
    if (!(t > 0.0)) throw ModelError("resistance_at: temperature must be positive");
    const double r = r_ref * (1.0 + per_kelvin * (t - t_ref));
    if (!(r > 0.0)) throw ModelError("resistance_at: non-positive resistance");
    return r;
}

/// epsilon * K^r; the weather record's K^r wins over the conductor default.
inline double radiation_factor(const ConductorSpec& c, const WeatherRecord& w) {
    return c.emissivity * (w.kr > 0.0 ? w.kr : c.radiation_coeff);
}

struct HbeBreakdown {
    double ohmic = 0.0;
    double solar = 0.0;
    double convection = 0.0;
    double radiation = 0.0;
    double temperature = 0.0;

    /// Gains minus losses.
    double residual() const { return ohmic + solar - convection - radiation; }
};

inline HbeBreakdown hbe_breakdown(double current_a, double t, const WeatherRecord& w, const ConductorSpec& c,
                                  double r_per_m) {
    const auto k = convection_coeffs(c, w);
    HbeBreakdown h;
    h.temperature = t;
    h.ohmic = current_a * current_a * r_per_m;
    h.solar = w.solar_w_per_m;
    h.convection = k.k_max() * (t - w.ambient_k);
    h.radiation = radiation_factor(c, w) * (std::pow(t, 4) - std::pow(w.ambient_k, 4));
    return h;
}

/// The temperature at which the heat balance closes. Losses grow strictly with T,
/// so bisection on [ambient, 2000 K] has exactly one root to find.
inline double steady_state_temperature(double current_a, const WeatherRecord& w, const ConductorSpec& c,
                                       double r_per_m) {
    if (current_a < 0.0) throw ModelError("steady_state_temperature: current must be non-negative");
    if (!(r_per_m > 0.0)) throw ModelError("steady_state_temperature: resistance must be positive");
    auto excess = [&](double t) { return -hbe_breakdown(current_a, t, w, c, r_per_m).residual(); };
    double lo = w.ambient_k, hi = kTemperatureCap;
    if (excess(lo) >= 0.0) return lo;
    if (excess(hi) < 0.0) throw ModelError("steady_state_temperature: no balance below 2000 K");
    while (hi - lo > kBisectionTol) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Largest current (A) that keeps the conductor at or below t_max; 0 when solar gain alone exceeds it.
inline double ampacity(double t_max, const WeatherRecord& w, const ConductorSpec& c, double r_per_m) {
    if (!(r_per_m > 0.0)) throw ModelError("ampacity: resistance must be positive");
    if (t_max < w.ambient_k) return 0.0;
    const auto k = convection_coeffs(c, w);
    const double headroom = k.k_max() * (t_max - w.ambient_k) +
                            radiation_factor(c, w) * (std::pow(t_max, 4) - std::pow(w.ambient_k, 4)) -
                            w.solar_w_per_m;
    return headroom > 0.0 ? std::sqrt(headroom / r_per_m) : 0.0;
}

inline double ampacity(const LineSpec& line, const WeatherRecord& w) {
    return ampacity(line.t_max, w, line.conductor, line.resistance_per_m());
}

/// Radiation linked to temperature through logarithms: ln(Q + eK Te^4) = ln(eK) + 4 ln T.
/// Each ln is replaced by one minimax line, which yields Q_rad ~ slope * T + offset.
struct RadiationLnFit {
    Segment temp_side;  // ln T on [t_lo, t_hi]
    Segment q_side;     // ln z, z = eK T^4, on [eK t_lo^4, eK t_hi^4]
    double rad_factor = 0.0;
    double ambient = 0.0;
    double slope = 0.0;   // W/(m K)
    double offset = 0.0;  // W/m
    double max_over = 0.0;   // max of (affine - exact) over the range, W/m
    double max_under = 0.0;  // max of (exact - affine) over the range, W/m

    double affine(double t) const { return slope * t + offset; }
};

inline RadiationLnFit radiation_ln_fit(double emissivity, double kr, double ambient, double t_lo = 273.0,
                                       double t_hi = 373.0) {
    if (!(t_lo > 0.0) || !(t_lo < t_hi)) throw ModelError("radiation_ln_fit: degenerate temperature range");
    const double ek = emissivity * kr;
    if (!(ek > 0.0)) throw ModelError("radiation_ln_fit: emissivity * K^r must be positive");
    const ScalarFn ln = [](double x) { return std::log(x); };
    const ScalarFn inv = [](double x) { return 1.0 / x; };
    RadiationLnFit fit;
    fit.rad_factor = ek;
    fit.ambient = ambient;
    fit.temp_side = fit_line_minmax(ln, inv, t_lo, t_hi);
    fit.q_side = fit_line_minmax(ln, inv, ek * std::pow(t_lo, 4), ek * std::pow(t_hi, 4));
    // s_q z + m_q = ln(eK) + 4 (s_T T + m_T)  =>  z affine in T; Q = z - eK Te^4.
    fit.slope = 4.0 * fit.temp_side.slope / fit.q_side.slope;
    fit.offset = (4.0 * fit.temp_side.intercept + std::log(ek) - fit.q_side.intercept) / fit.q_side.slope -
                 ek * std::pow(ambient, 4);
    for (int i = 0; i < kCertifyPoints; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (kCertifyPoints - 1);
        const double exact = ek * (std::pow(t, 4) - std::pow(ambient, 4));
        fit.max_over = std::max(fit.max_over, fit.affine(t) - exact);
        fit.max_under = std::max(fit.max_under, exact - fit.affine(t));
    }
    return fit;
}

}  // namespace gridxpand
