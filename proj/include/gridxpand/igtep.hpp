#pragma once

// Integrated generation/transmission expansion as a MILP, in three modes:
//   dc_det       DC flow, equality balance, static flow limits
//   dc_robust    as dc_det with the balance tightened/relaxed by the robust margin
//   dtlr_robust  linearised AC flow, no static limits; each line is held by its
//                robust heat balance at the period's weather instead
// plus decoding of a solver answer into a plan, and the post-solve audits.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "core_model.hpp"
#include "dtlr.hpp"
#include "error.hpp"
#include "linearize.hpp"
#include "model_ir.hpp"
#include "scenario.hpp"
#include "solve.hpp"
#include "uncertainty.hpp"

namespace gridxpand {

enum class PlanMode { dc_det, dc_robust, dtlr_robust };

inline const char* to_string(PlanMode m) {
    switch (m) {
        case PlanMode::dc_det: return "dc_det";
        case PlanMode::dc_robust: return "dc_robust";
        case PlanMode::dtlr_robust: return "dtlr_robust";
    }
    return "?";
}

inline PlanMode parse_mode(const std::string& s) {
    if (s == "dc_det") return PlanMode::dc_det;
    if (s == "dc_robust") return PlanMode::dc_robust;
    if (s == "dtlr_robust") return PlanMode::dtlr_robust;
    throw ModelError("unknown mode '" + s + "' (expected dc_det, dc_robust or dtlr_robust)");
}

inline constexpr double kAngleBound = std::numbers::pi / 2.0;  // rad, every bus
inline constexpr double kRadiationFitLo = 273.0;               // K
inline constexpr double kRadiationFitHi = 373.0;               // K

struct BuildOptions {
    int ohmic_tangents = kDefaultOhmicTangents;
    TrigFit trig = trig_segments();
};

using VarGrid = std::vector<std::vector<VarId>>;  // [entity][period]

/// Where each decision lives in the ModelIR. DTLR-only grids are empty in DC modes.
struct VarMap {
    std::vector<VarId> line_build;
    std::vector<VarId> unit_build;
    VarGrid dispatch;  // MW
    VarGrid flow;      // p.u.
    VarGrid angle;     // rad
    VarGrid angle_diff;
    VarGrid temperature;  // K
    VarGrid current;      // p.u.
    VarGrid q_con1, q_con2, q_rad, q_ohmic;  // W/m
    VarGrid conv_select, trig_side, flow_sign;
};

/// Per (line, period) constants of the DTLR block, kept for the audits.
struct DtlrTerms {
    ConvectionCoeffs conv;
    double ambient = 0.0;
    double solar = 0.0;
    double rad_factor = 0.0;
    double r_per_m = 0.0;
    double flow_bound = 0.0;    // p.u., bound on |pf|
    double tangent_gap = 0.0;   // W/m, worst under-estimate of I^2 R by the tangent cuts
    double rad_slope = 0.0;
    double rad_offset = 0.0;
    double rad_max_over = 0.0;  // W/m
    double conv_m = 0.0;
};

struct IgtepModel {
    ModelIR ir;
    VarMap vars;
    PlanMode mode = PlanMode::dc_det;
    RobustParams params;
    TrigFit trig;
    std::size_t reference_bus = 0;
    std::vector<std::vector<DtlrTerms>> dtlr;  // [line][period]
};

namespace detail {

/// Numeric ids compare as numbers, anything else lexicographically.
inline bool id_less(const std::string& a, const std::string& b) {
    auto numeric = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
    };
    if (numeric(a) && numeric(b) && a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

inline std::string key(const std::string& entity, const std::string& period) { return "[" + entity + "," + period + "]"; }

struct RadFitCache {
    std::map<std::tuple<double, double, double>, RadiationLnFit> fits;

    const RadiationLnFit& get(double ek, double lo, double hi) {
        auto k = std::make_tuple(ek, lo, hi);
        auto it = fits.find(k);
        if (it == fits.end()) it = fits.emplace(k, radiation_ln_fit(ek, 1.0, 0.0, lo, hi)).first;
        return it->second;
    }
};

/// Bound on |G - G cos(x) + beta sin(x)| as linearised, over both cosine pieces.
inline double ac_flow_bound(double g, double beta, const TrigFit& t) {
    double b = 0.0;
    for (const Segment* seg : {&t.cos_neg, &t.cos_pos})
        for (double x : {seg->lo, seg->hi}) b = std::max(b, std::abs(g - g * (*seg)(x) + beta * t.sin(x)));
    return b;
}

}  // namespace detail

inline std::size_t reference_bus(const CaseSystem& c) {
    if (c.buses.empty()) throw ModelError("case has no buses");
    std::size_t ref = 0;
    for (std::size_t b = 1; b < c.buses.size(); ++b)
        if (detail::id_less(c.buses[b].id, c.buses[ref].id)) ref = b;
    return ref;
}

/// Every line needs weather in every period for dtlr_robust; names the first gap.
inline void require_weather(const CaseSystem& c) {
    for (const auto& p : c.periods)
        for (const auto& l : c.lines)
            if (!p.weather.contains(l.id))
                throw ModelError("line " + l.id + " has no weather for period " + p.id + " (required by dtlr_robust)");
}

inline IgtepModel build_igtep(const CaseSystem& c, const RobustParams& params, PlanMode mode,
                              const BuildOptions& opt = {}) {
    require_valid(c);
    if (mode == PlanMode::dtlr_robust) require_weather(c);
    if (opt.ohmic_tangents < 1) throw ModelError("ohmic tangent count must be positive");

    IgtepModel m;
    m.mode = mode;
    m.params = mode == PlanMode::dc_det ? RobustParams::deterministic() : params;
    m.trig = opt.trig;
    m.ir.mode = to_string(mode);
    m.reference_bus = reference_bus(c);
    auto& ir = m.ir;
    auto& v = m.vars;
    const std::size_t nb = c.buses.size(), nl = c.lines.size(), ng = c.generators.size(), nd = c.periods.size();
    const double phiw = m.params.phi_omega();
    const double mu = m.params.mu();

    // Build decisions; existing elements are fixed at 1.
    for (const auto& l : c.lines) {
        auto u = ir.add_binary("u_line[" + l.id + "]");
        if (!l.candidate) ir.fix(u, 1.0);
        else ir.add_objective(u, l.install_cost);
        v.line_build.push_back(u);
    }
    for (const auto& g : c.generators) {
        auto u = ir.add_binary("u_unit[" + g.id + "]");
        if (!g.candidate) ir.fix(u, 1.0);
        else ir.add_objective(u, g.install_cost);
        v.unit_build.push_back(u);
    }

    v.dispatch.assign(ng, std::vector<VarId>(nd));
    v.flow.assign(nl, std::vector<VarId>(nd));
    v.angle.assign(nb, std::vector<VarId>(nd));
    for (std::size_t d = 0; d < nd; ++d) {
        const auto& per = c.periods[d];
        for (std::size_t g = 0; g < ng; ++g) {
            const auto& gen = c.generators[g];
            auto p = ir.add_continuous("P" + detail::key(gen.id, per.id), 0.0, gen.p_max);
            ir.add_objective(p, gen.op_cost * per.duration);
            ir.add_row("cap" + detail::key(gen.id, per.id), LinearExpr(p) + LinearExpr(v.unit_build[g], -gen.p_max),
                       Sense::le, 0.0);
            v.dispatch[g][d] = p;
        }
        for (std::size_t b = 0; b < nb; ++b) {
            auto a = ir.add_continuous("angle" + detail::key(c.buses[b].id, per.id), -kAngleBound, kAngleBound);
            if (b == m.reference_bus) ir.fix(a, 0.0);
            v.angle[b][d] = a;
        }
    }

    const double angle_span = 2.0 * kAngleBound;
    if (mode != PlanMode::dtlr_robust) {
        for (std::size_t l = 0; l < nl; ++l) {
            const auto& line = c.lines[l];
            const std::size_t from = c.bus_index(line.from_bus), to = c.bus_index(line.to_bus);
            for (std::size_t d = 0; d < nd; ++d) {
                const std::string k = detail::key(line.id, c.periods[d].id);
                auto pf = ir.add_continuous("pf" + k, -line.flow_limit, line.flow_limit);
                gadget_dc_flow(ir, "dcflow" + k, v.line_build[l], pf, line.susceptance, v.angle[from][d],
                               v.angle[to][d], line.flow_limit, angle_span);
                v.flow[l][d] = pf;
            }
        }
    } else {
        const auto grid = [&] { return VarGrid(nl, std::vector<VarId>(nd)); };
        v.angle_diff = grid();
        v.temperature = grid();
        v.current = grid();
        v.q_con1 = grid();
        v.q_con2 = grid();
        v.q_rad = grid();
        v.q_ohmic = grid();
        v.conv_select = grid();
        v.trig_side = grid();
        v.flow_sign = grid();
        m.dtlr.assign(nl, std::vector<DtlrTerms>(nd));
        detail::RadFitCache rad_cache;
        const double ib = c.current_base_a();
        const double link_m = kAngleDomain + angle_span;

        for (std::size_t l = 0; l < nl; ++l) {
            const auto& line = c.lines[l];
            const VarId u = v.line_build[l];
            const std::size_t from = c.bus_index(line.from_bus), to = c.bus_index(line.to_bus);
            const double r_pm = line.resistance_per_m();
            const double flow_bound = detail::ac_flow_bound(line.conductance, line.susceptance, m.trig);

            double k_top = 0.0, ambient_min = std::numeric_limits<double>::infinity();
            for (const auto& per : c.periods) {
                const auto& w = per.weather.at(line.id);
                k_top = std::max(k_top, convection_coeffs(line.conductor, w).k_max());
                ambient_min = std::min(ambient_min, w.ambient_k);
            }
            const double dt_top = std::max(0.0, line.t_max - ambient_min);
            const double conv_m = std::max({1.5 * k_top * dt_top, k_top * dt_top + mu, 1.0});

            for (std::size_t d = 0; d < nd; ++d) {
                const auto& per = c.periods[d];
                const auto& w = per.weather.at(line.id);
                const std::string k = detail::key(line.id, per.id);
                auto& terms = m.dtlr[l][d];
                terms.conv = convection_coeffs(line.conductor, w);
                terms.ambient = w.ambient_k;
                terms.solar = w.solar_w_per_m;
                terms.rad_factor = radiation_factor(line.conductor, w);
                terms.r_per_m = r_pm;
                terms.flow_bound = flow_bound;
                terms.conv_m = conv_m;

                // Angle difference seen by the trig fit; tied to the bus angles only when built.
                auto x = ir.add_continuous("x" + k, -kAngleDomain, kAngleDomain);
                LinearExpr gap = LinearExpr(x) - LinearExpr(v.angle[from][d]) + LinearExpr(v.angle[to][d]);
                ir.log_big_m("angle_link" + k, link_m, "fit domain + bus-angle span", gap);
                ir.add_row("angle_link_hi" + k, gap + LinearExpr(u, link_m), Sense::le, link_m);
                ir.add_row("angle_link_lo" + k, gap + LinearExpr(u, -link_m), Sense::ge, -link_m);
                v.angle_diff[l][d] = x;

                auto trig = gadget_trig(ir, "trig" + k, x, m.trig);
                v.trig_side[l][d] = trig.side;
                LinearExpr ac = LinearExpr(line.conductance) - trig.cos * line.conductance + trig.sin * line.susceptance;
                auto pf = gadget_bin_cont_product(ir, "pf" + k, u, ac, flow_bound, flow_bound);
                const VarId flow = pf.vars.front();
                v.flow[l][d] = flow;

                auto mag = gadget_abs_flow(ir, "abs" + k, LinearExpr(flow), flow_bound, flow_bound);
                v.flow_sign[l][d] = mag.vars.front();
                auto cur = ir.add_continuous("I" + k, 0.0, flow_bound);
                ir.add_row("I_def" + k, LinearExpr(cur) - mag.output, Sense::eq, 0.0);
                v.current[l][d] = cur;

                auto t = ir.add_continuous("T" + k, 0.0, line.t_max);
                ir.add_row("T_max" + k, LinearExpr(t) + LinearExpr(u, -line.t_max), Sense::le, 0.0);
                ir.add_row("T_amb" + k, LinearExpr(t) + LinearExpr(u, -w.ambient_k), Sense::ge, 0.0);
                v.temperature[l][d] = t;
                // u (T - Te) is linear here: T = 0 when unbuilt and T >= Te when built.
                const LinearExpr rise = LinearExpr(t) + LinearExpr(u, -w.ambient_k);

                auto q1 = ir.add_continuous("Qcon1" + k, 0.0, conv_m);
                auto q2 = ir.add_continuous("Qcon2" + k, 0.0, conv_m);
                ir.add_row("conv1" + k, LinearExpr(q1) - rise * ((1.0 - phiw) * terms.conv.k_prime), Sense::le, mu);
                ir.add_row("conv2" + k, LinearExpr(q2) - rise * ((1.0 - phiw) * terms.conv.k_double_prime), Sense::le,
                           mu);
                auto sel = gadget_convection_select(ir, "convsel" + k, terms.conv.k_prime, terms.conv.k_double_prime, q1,
                                                    q2, conv_m);
                v.q_con1[l][d] = q1;
                v.q_con2[l][d] = q2;
                v.conv_select[l][d] = sel.vars.front();

                const double lo = std::min(kRadiationFitLo, w.ambient_k);
                const double hi = std::max(kRadiationFitHi, line.t_max);
                const auto& fit = rad_cache.get(terms.rad_factor, lo, hi);
                terms.rad_slope = fit.slope;
                terms.rad_offset = fit.offset - terms.rad_factor * std::pow(w.ambient_k, 4);
                terms.rad_max_over = fit.max_over;  // fit range covers [ambient, t_max]
                auto qr = ir.add_continuous("Qrad" + k, 0.0,
                                            std::max(1.0, terms.rad_slope * line.t_max + terms.rad_offset));
                ir.add_row("rad" + k, LinearExpr(qr) - LinearExpr(t, terms.rad_slope) - LinearExpr(u, terms.rad_offset),
                           Sense::le, 0.0);
                v.q_rad[l][d] = qr;

                // I^2 R from below by tangents at n evenly spaced currents.
                const double scale = r_pm * ib * ib;
                const int n = opt.ohmic_tangents;
                const double h = flow_bound / n;
                terms.tangent_gap = scale * h * h / 4.0;
                auto qo = ir.add_continuous("Qohm" + k, 0.0, scale * flow_bound * flow_bound);
                for (int i = 1; i <= n; ++i) {
                    const double ik = h * i;
                    ir.add_row("ohm" + std::to_string(i) + k, LinearExpr(qo) - LinearExpr(cur, 2.0 * scale * ik),
                               Sense::ge, -scale * ik * ik);
                }
                v.q_ohmic[l][d] = qo;

                LinearExpr hbe = LinearExpr(qo) + LinearExpr(u, terms.solar * (1.0 + phiw));
                hbe -= LinearExpr(q1) + LinearExpr(q2) + LinearExpr(qr);
                ir.add_row("hbe" + k, hbe, Sense::le, mu * std::max(1.0, std::abs(terms.solar)));
            }
        }
    }

    // Nodal balance in MW.
    for (std::size_t d = 0; d < nd; ++d) {
        for (std::size_t b = 0; b < nb; ++b) {
            LinearExpr e;
            for (std::size_t g = 0; g < ng; ++g)
                if (c.generators[g].bus == c.buses[b].id) e.add(v.dispatch[g][d], 1.0);
            for (std::size_t l = 0; l < nl; ++l) {
                if (c.lines[l].from_bus == c.buses[b].id) e.add(v.flow[l][d], -c.s_base);
                if (c.lines[l].to_bus == c.buses[b].id) e.add(v.flow[l][d], c.s_base);
            }
            const double net = net_demand_forecast(c, b, d);
            const std::string name = "bal" + detail::key(c.buses[b].id, c.periods[d].id);
            if (mode == PlanMode::dc_det) {
                ir.add_row(name, e, Sense::eq, net);
            } else {
                const auto margin = robust_margin(net, m.params);
                ir.add_row(name, e, Sense::ge, net - margin.relax + margin.tighten);
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Plans and audits

struct BigMUse {
    std::string name;
    std::string provenance;
    double value = 0.0;
    double operand = 0.0;  // |operand| at the solution
    double utilization = 0.0;
    bool binding = false;  // operand reaches its M: the constant may be cutting
};

struct HbeAuditRow {
    std::string line;
    std::string period;
    double temperature = 0.0;         // K, as planned
    double steady_temperature = 0.0;  // K, exact heat balance at the planned current
    double current_pu = 0.0;
    double current_a = 0.0;
    double residual = 0.0;  // W/m, gains minus losses at the planned (T, I)
    double bound = 0.0;
    double residual_ac = 0.0;  // same with I from the exact AC flow at the planned angle
    double bound_ac = 0.0;

    bool within() const { return residual <= bound && residual_ac <= bound_ac; }
};

struct PlanResult {
    SolveStatus status = SolveStatus::infeasible;
    PlanMode mode = PlanMode::dc_det;
    std::string case_name;
    double peak_demand = 0.0;
    double objective = 0.0;  // $, recomputed from case data
    double bound = 0.0;
    std::string backend;
    double seconds = 0.0;
    std::vector<std::string> added_lines;
    std::vector<std::string> added_units;
    std::vector<std::string> period_ids;
    std::map<std::string, std::vector<double>> dispatch_mw;     // unit -> per period
    std::map<std::string, std::vector<double>> flows_pu;        // line -> per period
    std::map<std::string, std::vector<double>> temperatures_k;  // dtlr only
    std::map<std::string, std::vector<double>> currents_pu;     // dtlr only
    std::vector<BigMUse> big_m;
    std::vector<HbeAuditRow> hbe;
    std::size_t num_vars = 0, num_rows = 0, num_binaries = 0;
    std::vector<double> values;  // raw solver vector, not serialised

    bool has_plan() const { return !values.empty(); }
    std::size_t added_count() const { return added_lines.size() + added_units.size(); }
};

/// Investment plus operating cost of a plan, from case data only.
inline double recompute_objective(const CaseSystem& c, const std::vector<std::string>& lines,
                                  const std::vector<std::string>& units,
                                  const std::map<std::string, std::vector<double>>& dispatch_mw) {
    double total = 0.0;
    for (const auto& id : lines) total += c.lines.at(c.line_index(id)).install_cost;
    for (const auto& id : units) total += c.generators.at(c.generator_index(id)).install_cost;
    for (const auto& g : c.generators) {
        const auto& p = dispatch_mw.at(g.id);
        for (std::size_t d = 0; d < c.periods.size(); ++d) total += p.at(d) * g.op_cost * c.periods[d].duration;
    }
    return total;
}

inline std::vector<BigMUse> big_m_audit(const ModelIR& ir, const std::vector<double>& x) {
    std::vector<BigMUse> out;
    out.reserve(ir.big_m().size());
    for (const auto& r : ir.big_m()) {
        BigMUse u{r.name, r.provenance, r.value, std::abs(r.operand.evaluate(x)), 0.0, false};
        u.utilization = r.value > 0.0 ? u.operand / r.value : 0.0;
        u.binding = u.utilization >= 1.0 - 1e-7;
        out.push_back(std::move(u));
    }
    return out;
}

inline constexpr double kAuditTolerance = 1e-4;  // W/m, solver feasibility slack

/// Exact heat balance at the planned (T, I) of every built line; the bound collects the
/// robust relaxations, the tangent gap and the radiation fit over-estimate.
inline std::vector<HbeAuditRow> hbe_residual_audit(const PlanResult& plan, const IgtepModel& m,
                                                   const CaseSystem& c) {
    std::vector<HbeAuditRow> rows;
    if (m.mode != PlanMode::dtlr_robust || !plan.has_plan()) return rows;
    const auto& x = plan.values;
    const double ib = c.current_base_a();
    const double mu = m.params.mu();
    const double cos_err = m.trig.cos_max_abs_err(), sin_err = m.trig.sin.max_abs_err;
    for (std::size_t l = 0; l < c.lines.size(); ++l) {
        const auto& line = c.lines[l];
        if (x[m.vars.line_build[l].index] < 0.5) continue;
        for (std::size_t d = 0; d < c.periods.size(); ++d) {
            const auto& t = m.dtlr[l][d];
            const auto& w = c.periods[d].weather.at(line.id);
            HbeAuditRow r;
            r.line = line.id;
            r.period = c.periods[d].id;
            r.temperature = x[m.vars.temperature[l][d].index];
            r.current_pu = x[m.vars.current[l][d].index];
            r.current_a = r.current_pu * ib;
            const double tt = std::max(r.temperature, t.ambient);
            auto residual_at = [&](double amps) {
                return hbe_breakdown(amps, tt, w, line.conductor, t.r_per_m).residual();
            };
            const double base = mu * (1.0 + std::max(1.0, std::abs(t.solar))) + t.tangent_gap + t.rad_max_over +
                                kAuditTolerance;
            r.residual = residual_at(r.current_a);
            r.bound = base;
            const double ang = x[m.vars.angle_diff[l][d].index];
            const double exact_pu = std::abs(line.conductance - line.conductance * std::cos(ang) +
                                             line.susceptance * std::sin(ang));
            r.residual_ac = residual_at(exact_pu * ib);
            const double di = line.conductance * cos_err + line.susceptance * sin_err;
            r.bound_ac = base + t.r_per_m * ib * ib * (2.0 * r.current_pu * di + di * di);
            r.steady_temperature = steady_state_temperature(r.current_a, w, line.conductor, t.r_per_m);
            rows.push_back(r);
        }
    }
    return rows;
}

inline constexpr double kIntegralityTolerance = 1e-6;
inline constexpr double kObjectiveTolerance = 1e-6;  // relative

/// Decodes a solver answer. Binaries must sit within 1e-6 of 0 or 1 and the objective
/// recomputed from case data must match the solver's within 1e-6 relative.
inline PlanResult extract_plan(const Solution& sol, const IgtepModel& m, const CaseSystem& c) {
    PlanResult p;
    p.status = sol.status;
    p.mode = m.mode;
    p.case_name = c.name;
    p.peak_demand = c.peak_demand;
    p.backend = sol.backend;
    p.seconds = sol.seconds;
    p.bound = sol.bound;
    p.num_vars = m.ir.num_vars();
    p.num_rows = m.ir.num_rows();
    p.num_binaries = m.ir.num_binaries();
    for (const auto& per : c.periods) p.period_ids.push_back(per.id);
    if (!sol.has_incumbent()) return p;

    const auto& x = sol.x;
    if (x.size() != m.ir.num_vars()) throw SolveError("solution length does not match the model");
    const double ires = m.ir.max_integrality_residual(x);
    if (ires > kIntegralityTolerance)
        throw SolveError("integrality residual " + std::to_string(ires) + " exceeds 1e-6; tighten the solver tolerance");
    p.values = x;
    for (std::size_t l = 0; l < c.lines.size(); ++l)
        if (c.lines[l].candidate && x[m.vars.line_build[l].index] >= 0.5) p.added_lines.push_back(c.lines[l].id);
    for (std::size_t g = 0; g < c.generators.size(); ++g)
        if (c.generators[g].candidate && x[m.vars.unit_build[g].index] >= 0.5)
            p.added_units.push_back(c.generators[g].id);
    const std::size_t nd = c.periods.size();
    for (std::size_t g = 0; g < c.generators.size(); ++g) {
        auto& row = p.dispatch_mw[c.generators[g].id];
        for (std::size_t d = 0; d < nd; ++d) row.push_back(x[m.vars.dispatch[g][d].index]);
    }
    for (std::size_t l = 0; l < c.lines.size(); ++l) {
        auto& row = p.flows_pu[c.lines[l].id];
        for (std::size_t d = 0; d < nd; ++d) row.push_back(x[m.vars.flow[l][d].index]);
        if (m.mode == PlanMode::dtlr_robust) {
            auto& tr = p.temperatures_k[c.lines[l].id];
            auto& cr = p.currents_pu[c.lines[l].id];
            for (std::size_t d = 0; d < nd; ++d) {
                tr.push_back(x[m.vars.temperature[l][d].index]);
                cr.push_back(x[m.vars.current[l][d].index]);
            }
        }
    }
    p.objective = recompute_objective(c, p.added_lines, p.added_units, p.dispatch_mw);
    const double solver_obj = m.ir.objective_value(x);
    if (std::abs(p.objective - solver_obj) > kObjectiveTolerance * std::max(1.0, std::abs(solver_obj)))
        throw SolveError("recomputed objective " + std::to_string(p.objective) + " differs from the solver's " +
                         std::to_string(solver_obj));
    p.big_m = big_m_audit(m.ir, x);
    p.hbe = hbe_residual_audit(p, m, c);
    return p;
}

}  // namespace gridxpand
