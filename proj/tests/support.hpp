#pragma once

// Oracles and generators shared by the unit tests and the acceptance binary.

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gridxpand/core_model.hpp>
#include <gridxpand/igtep.hpp>
#include <gridxpand/linearize.hpp>
#include <gridxpand/model_ir.hpp>
#include <gridxpand/solve.hpp>

namespace gxtest {

using namespace gridxpand;

inline std::string data_path(const std::string& rel) { return std::string(GRIDXPAND_DATA_DIR) + "/" + rel; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}
inline int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// [min, max] of `e` over the feasible set by exhaustive enumeration; nullopt when infeasible.
inline std::optional<std::pair<double, double>> oracle_range(const ModelIR& base, const LinearExpr& e) {
    ModelIR lo = base, hi = base;
    for (const auto& t : e.terms) {
        lo.add_objective(t.var, t.coef);
        hi.add_objective(t.var, -t.coef);
    }
    const auto a = oracle_solve(lo);
    if (a.status != SolveStatus::optimal) return std::nullopt;
    const auto b = oracle_solve(hi);
    return std::make_pair(a.objective + e.constant, -b.objective + e.constant);
}

inline bool range_is(const std::optional<std::pair<double, double>>& r, double v, double tol = 1e-7) {
    const double scale = 1.0 + std::abs(v);
    return r && std::abs(r->first - v) <= tol * scale && std::abs(r->second - v) <= tol * scale;
}

// ---------------------------------------------------------------------------
// Gadget exactness: each instance fixes the gadget inputs, then asks the oracle
// for the output range. Exact means the range collapses onto the defining function.

inline bool max1abs_exact(double delta, double bound) {
    ModelIR ir;
    auto d = ir.add_continuous("delta", -bound, bound);
    auto g = gadget_max1abs(ir, "m", d);
    ir.fix(d, delta);
    return range_is(oracle_range(ir, g.output), std::max(1.0, std::abs(delta)));
}

inline bool product_exact(int y, double delta, double x1) {
    ModelIR ir;
    auto yv = ir.add_binary("y");
    auto d = ir.add_continuous("delta", -x1, x1);
    auto g = gadget_bin_cont_product(ir, "p", yv, LinearExpr(d), x1, x1);
    ir.fix(yv, y);
    ir.fix(d, delta);
    return range_is(oracle_range(ir, g.output), y * delta);
}

inline bool abs_flow_exact(double pf, double bound) {
    ModelIR ir;
    auto p = ir.add_continuous("pf", -bound, bound);
    auto g = gadget_abs_flow(ir, "a", LinearExpr(p), bound, bound);
    ir.fix(p, pf);
    return range_is(oracle_range(ir, g.output), std::abs(pf));
}

/// Direct definition: pf = u beta (a_s - a_r) with |pf| <= pf_max, else infeasible.
inline bool dc_flow_exact(int u, double beta, double a_s, double a_r, double pf_max) {
    ModelIR ir;
    auto uv = ir.add_binary("u");
    auto pf = ir.add_continuous("pf", -pf_max, pf_max);
    auto as = ir.add_continuous("as", -std::numbers::pi / 2, std::numbers::pi / 2);
    auto ar = ir.add_continuous("ar", -std::numbers::pi / 2, std::numbers::pi / 2);
    gadget_dc_flow(ir, "f", uv, pf, beta, as, ar, pf_max, std::numbers::pi);
    ir.fix(uv, u);
    ir.fix(as, a_s);
    ir.fix(ar, a_r);
    const double direct = u * beta * (a_s - a_r);
    const bool direct_feasible = std::abs(direct) <= pf_max;
    const auto r = oracle_range(ir, LinearExpr(pf));
    if (!direct_feasible) return !r.has_value();
    return range_is(r, direct);
}

/// The selected convection loss at temperature rise dt; the HBE lets the model push
/// both branches up to their convection rows, so the maximum of q1 + q2 is the answer.
inline std::optional<double> convection_select_value(double k1, double k2, double dt) {
    ModelIR ir;
    const double m = 1.5 * std::max(k1, k2) * dt + 1.0;
    auto q1 = ir.add_continuous("q1", 0.0, m);
    auto q2 = ir.add_continuous("q2", 0.0, m);
    ir.add_row("conv1", LinearExpr(q1), Sense::le, k1 * dt);
    ir.add_row("conv2", LinearExpr(q2), Sense::le, k2 * dt);
    gadget_convection_select(ir, "s", k1, k2, q1, q2, m);
    const auto r = oracle_range(ir, LinearExpr(q1) + LinearExpr(q2));
    if (!r) return std::nullopt;
    return r->second;
}

/// The max-term formulation the select gadget replaces: y picks one branch through
/// products, with Q1 >= Q2 y and Q1 (1 - y) <= Q2 keeping the pick on the larger one.
inline std::optional<double> convection_max_term_value(double k1, double k2, double dt) {
    ModelIR ir;
    const double q1v = k1 * dt, q2v = k2 * dt;
    const double m = std::max(q1v, q2v) + 1.0;
    auto y = ir.add_binary("y");
    auto q1 = ir.add_continuous("q1", 0.0, m);
    auto q2 = ir.add_continuous("q2", 0.0, m);
    ir.fix(q1, q1v);
    ir.fix(q2, q2v);
    auto t1 = gadget_bin_cont_product(ir, "yq1", y, q1);
    auto t2 = gadget_bin_cont_product(ir, "yq2", y, q2);
    ir.add_row("max1", LinearExpr(q1) - t2.output, Sense::ge, 0.0);
    ir.add_row("max2", LinearExpr(q1) - t1.output - LinearExpr(q2), Sense::le, 0.0);
    const LinearExpr qmax = t1.output + LinearExpr(q2) - t2.output;
    const auto r = oracle_range(ir, qmax);
    if (!r) return std::nullopt;
    return r->second;
}

// ---------------------------------------------------------------------------
// Random small cases

inline ConductorSpec table_conductor() {
    ConductorSpec c;
    c.diameter = 0.035;
    c.air_density = 1.293;
    c.air_viscosity = 1.81e-5;
    c.thermal_conductivity = 0.028;
    c.wind_angle_coeff = 1.0;
    c.emissivity = 0.75;
    c.radiation_coeff = 2.5e-9;
    c.resistance_ref = 8.0;
    c.temperature_ref = 293.0;
    c.thermal_resistivity = 0.003125;
    c.heat_capacity = 1.0;
    return c;
}

inline WeatherRecord table_weather() { return {298.0, 2.23, 14.08, 2.5e-9}; }

/// A connected chain of existing lines, a few candidates and units. With `dtlr` every
/// line gets weather and the case stays small enough for enumeration.
inline CaseSystem random_case(std::mt19937_64& rng, bool dtlr) {
    CaseSystem c;
    c.name = "random";
    const int nb = dtlr ? 2 : uniform_int(rng, 2, 3);
    const int nd = dtlr ? 1 : uniform_int(rng, 1, 2);
    c.peak_demand = uniform(rng, 60.0, 220.0);
    for (int d = 0; d < nd; ++d) {
        PeriodSpec p;
        p.id = "d" + std::to_string(d + 1);
        p.load_factor = d == 0 ? 1.0 : uniform(rng, 0.4, 0.9);
        p.duration = uniform(rng, 500.0, 3000.0);
        c.periods.push_back(p);
    }
    std::vector<double> w(nb);
    double sum = 0.0;
    for (int b = 0; b < nb; ++b) sum += (w[b] = b == 0 ? 0.0 : uniform(rng, 0.2, 1.0));
    for (int b = 0; b < nb; ++b) {
        BusSpec bus;
        bus.id = std::to_string(b + 1);
        bus.load_weight = w[b] / sum;
        for (int d = 0; d < nd; ++d) {
            bus.ev_forecast.push_back(b == 0 ? 0.0 : uniform(rng, 0.0, 10.0));
            bus.wind_forecast.push_back(b == 0 ? 0.0 : uniform(rng, 0.0, 15.0));
            bus.pv_forecast.push_back(0.0);
        }
        c.buses.push_back(bus);
    }
    auto add_line = [&](int from, int to, bool cand) {
        LineSpec l;
        l.id = (cand ? "C" : "E") + std::to_string(c.lines.size() + 1);
        l.from_bus = std::to_string(from);
        l.to_bus = std::to_string(to);
        l.candidate = cand;
        l.install_cost = cand ? uniform(rng, 1e5, 2e6) : 0.0;
        l.susceptance = uniform(rng, 3.0, 6.0);
        l.conductance = dtlr ? uniform(rng, 0.5, 1.5) : 0.0;
        l.resistance_at_tmax = uniform(rng, 6.0, 12.0);
        l.length = 50.0;
        l.t_max = uniform(rng, 340.0, 380.0);
        l.flow_limit = uniform(rng, 0.5, 1.2);
        l.conductor = table_conductor();
        c.lines.push_back(l);
    };
    for (int b = 2; b <= nb; ++b) add_line(b - 1, b, false);
    const int ncl = dtlr ? uniform_int(rng, 0, 1) : uniform_int(rng, 1, 3);
    for (int k = 0; k < ncl; ++k) {
        const int from = uniform_int(rng, 1, nb - 1);
        add_line(from, uniform_int(rng, from + 1, nb), true);
    }
    auto add_gen = [&](int bus, bool cand) {
        GeneratorSpec g;
        g.id = (cand ? "U" : "G") + std::to_string(c.generators.size() + 1);
        g.bus = std::to_string(bus);
        g.candidate = cand;
        g.install_cost = cand ? uniform(rng, 1e5, 3e6) : 0.0;
        g.op_cost = uniform(rng, 5.0, 40.0);
        g.p_max = uniform(rng, 30.0, 150.0);
        c.generators.push_back(g);
    };
    add_gen(1, false);
    const int ncu = uniform_int(rng, 1, dtlr ? 2 : 3);
    for (int k = 0; k < ncu; ++k) add_gen(uniform_int(rng, 1, nb), true);
    if (dtlr)
        for (auto& p : c.periods)
            for (const auto& l : c.lines) {
                auto w = table_weather();
                w.ambient_k = uniform(rng, 285.0, 305.0);
                w.wind_mps = uniform(rng, 0.5, 4.0);
                p.weather[l.id] = w;
            }
    return c;
}

struct RandomInstance {
    CaseSystem c;
    PlanMode mode;
    RobustParams params;
    IgtepModel model;
};

/// Draws until the built model has at most `max_free` free binaries.
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_free = 10) {
    for (;;) {
        const int m = uniform_int(rng, 0, 2);
        const auto mode = static_cast<PlanMode>(m);
        auto c = random_case(rng, mode == PlanMode::dtlr_robust);
        const RobustParams params(uniform(rng, 0.0, 0.1), uniform(rng, 0.0, 0.02), uniform(rng, 0.02, 0.5));
        BuildOptions opt;
        opt.ohmic_tangents = 8;
        auto model = build_igtep(c, params, mode, opt);
        if (model.ir.free_binaries().size() <= max_free) return {std::move(c), mode, params, std::move(model)};
    }
}

}  // namespace gxtest
