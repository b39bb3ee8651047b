#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <gridxpand/dtlr.hpp>

#include "support.hpp"

using namespace gridxpand;
using gxtest::table_conductor;
using gxtest::table_weather;

namespace {
constexpr double kRPerM = 10.0 / 50000.0;
}

TEST(Reynolds, TableInputs) {
    EXPECT_NEAR(reynolds(0.035, 2.23, 1.293, 1.81e-5), 5575.6, 0.05);
    EXPECT_EQ(reynolds(0.035, 0.0, 1.293, 1.81e-5), 0.0);
    EXPECT_DOUBLE_EQ(reynolds(0.035, 4.46, 1.293, 1.81e-5), 2.0 * reynolds(0.035, 2.23, 1.293, 1.81e-5));
    EXPECT_THROW(reynolds(0.0, 1.0, 1.293, 1.81e-5), ModelError);
    EXPECT_THROW(reynolds(0.035, 1.0, 1.293, 0.0), ModelError);
}

TEST(ConvectionCoeffs, TableInputs) {
    const auto k = convection_coeffs(1.0, 5575.6, 0.028);
    EXPECT_NEAR(k.k_prime, 3.382, 1e-3);
    EXPECT_NEAR(k.k_double_prime, 1.576, 1e-3);
    const auto still = convection_coeffs(1.0, 0.0, 0.028);
    EXPECT_DOUBLE_EQ(still.k_prime, 1.01 * 0.028);
    EXPECT_EQ(still.k_double_prime, 0.0);
}

TEST(ConvectionCoeffs, StrictlyIncreasingInReynolds) {
    double prev1 = -1.0, prev2 = -1.0;
    for (int i = 0; i < 100; ++i) {
        const auto k = convection_coeffs(1.0, 100.0 * i, 0.028);
        EXPECT_GT(k.k_prime, prev1);
        EXPECT_GT(k.k_double_prime, prev2);
        prev1 = k.k_prime;
        prev2 = k.k_double_prime;
    }
}

TEST(Convection, ForcedAndNatural) {
    EXPECT_NEAR(forced_convection(3.382, 373.0, 298.0), 253.65, 1e-9);
    EXPECT_EQ(forced_convection(3.382, 298.0, 298.0), 0.0);
    EXPECT_THROW(forced_convection(3.382, 290.0, 298.0), ModelError);
    EXPECT_EQ(natural_convection(1.0, 298.0, 298.0), 0.0);
    EXPECT_NEAR(natural_convection(1.0, 314.0, 298.0), 32.0, 1e-12);
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
        const double q = natural_convection(0.5, 298.0 + i, 298.0);
        EXPECT_GT(q, prev);
        prev = q;
    }
}

TEST(Convection, LargerCoefficientSelectsLargerLoss) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 500; ++i) {
        const double k1 = gxtest::uniform(rng, 0.1, 5.0), k2 = gxtest::uniform(rng, 0.1, 5.0);
        const double dt = gxtest::uniform(rng, 0.1, 100.0);
        const double q1 = forced_convection(k1, 298.0 + dt, 298.0), q2 = forced_convection(k2, 298.0 + dt, 298.0);
        EXPECT_EQ(std::max(q1, q2) == q1, k1 >= k2);
    }
}

TEST(Radiation, TableValue) {
    EXPECT_NEAR(radiation_loss(0.75, 2.5e-9, 373.0, 298.0), 21.507, 1e-3);
    EXPECT_EQ(radiation_loss(0.75, 2.5e-9, 298.0, 298.0), 0.0);
}

TEST(Resistance, AffineInTemperature) {
    EXPECT_DOUBLE_EQ(resistance_at(293.0, 8.0, 293.0, 0.003125), 8.0);
    const double h = 1e-3;
    for (double t : {280.0, 300.0, 350.0, 373.0}) {
        const double fd = (resistance_at(t + h, 8.0, 293.0, 0.0341) - resistance_at(t - h, 8.0, 293.0, 0.0341)) / (2 * h);
        EXPECT_NEAR(fd, 8.0 * 0.0341, 1e-10);
    }
    EXPECT_NEAR(resistance_at(373.0, 8.0, 293.0, 0.003125) / 8.0 - 1.0, 0.25, 1e-12);
    EXPECT_THROW(resistance_at(100.0, 8.0, 293.0, 0.05), ModelError);
}

TEST(SteadyState, ZeroGainIsAmbient) {
    auto w = table_weather();
    w.solar_w_per_m = 0.0;
    EXPECT_NEAR(steady_state_temperature(0.0, w, table_conductor(), kRPerM), 298.0, 1e-6);
}

TEST(SteadyState, SolarOnly) {
    const auto w = table_weather();
    const double t = steady_state_temperature(0.0, w, table_conductor(), kRPerM);
    EXPECT_NEAR(t, 301.9, 0.05);
    const double ek = 1.875e-9;
    EXPECT_NEAR(t - 298.0, 14.08 / (3.3823 + 4 * ek * std::pow(298.0, 3)), 0.01);
    EXPECT_LE(std::abs(hbe_breakdown(0.0, t, w, table_conductor(), kRPerM).residual()), 1e-5);
}

TEST(SteadyState, ResidualClosesOnRandomInputs) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        WeatherRecord w{gxtest::uniform(rng, 260.0, 320.0), gxtest::uniform(rng, 0.2, 8.0), gxtest::uniform(rng, 0.0, 30.0),
                        2.5e-9};
        const double current = gxtest::uniform(rng, 0.0, 2000.0);
        const double t = steady_state_temperature(current, w, table_conductor(), kRPerM);
        const auto h = hbe_breakdown(current, t, w, table_conductor(), kRPerM);
        // 1e-6 K of bisection slack times dQ/dT (< 20 W/(m K)) bounds the residual.
        EXPECT_LE(std::abs(h.residual()), 2e-5) << i;
    }
}

TEST(Ampacity, TableValue) {
    const auto w = table_weather();
    const double amp = ampacity(373.0, w, table_conductor(), kRPerM);
    EXPECT_NEAR(amp, 1142.6, 0.1);
    EXPECT_NEAR(steady_state_temperature(amp, w, table_conductor(), kRPerM), 373.0, 1e-4);
    EXPECT_EQ(ampacity(298.0, w, table_conductor(), kRPerM), 0.0);
    EXPECT_THROW(ampacity(373.0, w, table_conductor(), 0.0), ModelError);
}

TEST(Ampacity, RoundTripGrid) {
    int count = 0;
    for (double te : {270.0, 285.0, 298.0, 305.0, 315.0})
        for (double v : {0.5, 1.5, 2.23, 4.0, 8.0})
            for (double qs : {0.0, 5.0, 14.08, 20.0, 30.0}) {
                const WeatherRecord w{te, v, qs, 2.5e-9};
                const double amp = ampacity(373.0, w, table_conductor(), kRPerM);
                ASSERT_GT(amp, 0.0);
                EXPECT_NEAR(steady_state_temperature(amp, w, table_conductor(), kRPerM), 373.0, 1e-4);
                ++count;
            }
    EXPECT_EQ(count, 125);
}

TEST(Ampacity, MonotoneInWeather) {
    const double tes[] = {270.0, 285.0, 298.0, 305.0, 315.0};
    const double vs[] = {0.5, 1.5, 2.23, 4.0, 8.0};
    const double qss[] = {0.0, 5.0, 14.08, 20.0, 30.0};
    auto amp = [](double te, double v, double qs) {
        return ampacity(373.0, WeatherRecord{te, v, qs, 2.5e-9}, table_conductor(), kRPerM);
    };
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c + 1 < 5; ++c) {
                EXPECT_GE(amp(tes[c], vs[a], qss[b]), amp(tes[c + 1], vs[a], qss[b]));
                EXPECT_GE(amp(tes[a], vs[b], qss[c]), amp(tes[a], vs[b], qss[c + 1]));
                EXPECT_LE(amp(tes[a], vs[c], qss[b]), amp(tes[a], vs[c + 1], qss[b]));
            }
}

TEST(RadiationLnFit, PublishedLineErrorAtThreeHundred) {
    const double line = 0.00312 * 300.0 + 4.75824;
    EXPECT_NEAR(line, 5.69424, 1e-9);
    EXPECT_NEAR(std::abs(line - std::log(300.0)) / std::log(300.0), 0.0017, 1e-4);
}

TEST(RadiationLnFit, OwnFitMatchesPublishedLine) {
    const auto fit = radiation_ln_fit(0.75, 2.5e-9, 298.0);
    EXPECT_NEAR(fit.temp_side.slope, 0.00312, 0.1 * 0.00312);
    EXPECT_NEAR(fit.temp_side.intercept, 4.75824, 0.005 * 4.75824);
    EXPECT_LE(fit.temp_side.max_rel_err, 0.0025);
    EXPECT_THROW(radiation_ln_fit(0.75, 2.5e-9, 298.0, 373.0, 273.0), ModelError);
}

TEST(RadiationLnFit, SlopeMatchesDenseGridMinimax) {
    // Oracle: scan slopes, intercept centred on the error band, keep the smallest band.
    double best_s = 0.0, best_band = INFINITY;
    for (int i = 0; i <= 4000; ++i) {
        const double s = 0.0025 + 0.0000005 * i;
        double lo = INFINITY, hi = -INFINITY;
        for (int k = 0; k <= 1000; ++k) {
            const double t = 273.0 + 0.1 * k;
            const double r = std::log(t) - s * t;
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        if (hi - lo < best_band) {
            best_band = hi - lo;
            best_s = s;
        }
    }
    const auto fit = radiation_ln_fit(0.75, 2.5e-9, 298.0);
    EXPECT_NEAR(fit.temp_side.slope, best_s, 2e-6);
}

TEST(RadiationLnFit, AffineTracksExactRadiation) {
    const auto fit = radiation_ln_fit(0.75, 2.5e-9, 298.0);
    for (int k = 0; k <= 100; ++k) {
        const double t = 298.0 + 0.75 * k;
        const double exact = radiation_loss(0.75, 2.5e-9, t, 298.0);
        EXPECT_LE(fit.affine(t) - exact, fit.max_over + 1e-9);
        EXPECT_LE(exact - fit.affine(t), fit.max_under + 1e-9);
    }
    // The two ln errors compound to a few W/m at most over the 100 K range.
    EXPECT_LT(fit.max_over + fit.max_under, 10.0);
}
