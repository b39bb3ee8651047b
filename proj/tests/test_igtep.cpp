#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <gridxpand/igtep.hpp>
#include <gridxpand/scenario.hpp>

#include "support.hpp"

using namespace gridxpand;
using namespace gxtest;

namespace {

CaseSystem toy() { return load_case(data_path("cases/toy2.json")); }

BuildOptions small_opts() {
    BuildOptions o;
    o.ohmic_tangents = 8;
    return o;
}

PlanResult solve_oracle(const IgtepModel& m, const CaseSystem& c) { return extract_plan(oracle_solve(m.ir), m, c); }

bool have_external() {
#ifdef GRIDXPAND_HAVE_HIGHS
    return true;
#else
    return false;
#endif
}

/// Toy variant with both units existing and a cheap sending end, so the line runs at its limit.
CaseSystem toy_line_bound(double peak, double t_max) {
    auto c = toy();
    c.peak_demand = peak;
    c.lines[0].t_max = t_max;
    c.generators[0].p_max = 400.0;
    c.generators[1].candidate = false;
    c.generators[1].install_cost = 0.0;
    c.generators[1].p_max = 400.0;
    return c;
}

}  // namespace

TEST(BuildIgtep, ToyDcDetCountsAndPlan) {
    const auto c = toy();
    const auto m = build_igtep(c, RobustParams::deterministic(), PlanMode::dc_det);
    // u_line, 2 u_unit, 2 P, 2 angles, 1 pf.
    EXPECT_EQ(m.ir.num_vars(), 8u);
    // 2 capacity rows, 4 DC-flow rows, 2 balances.
    EXPECT_EQ(m.ir.num_rows(), 8u);
    EXPECT_EQ(m.ir.num_binaries(), 3u);
    EXPECT_EQ(m.ir.free_binaries().size(), 1u);
    EXPECT_TRUE(m.ir.orphan_vars().empty());

    const auto p = solve_oracle(m, c);
    ASSERT_EQ(p.status, SolveStatus::optimal);
    EXPECT_TRUE(p.added_lines.empty());
    ASSERT_EQ(p.added_units.size(), 1u);
    EXPECT_EQ(p.added_units[0], "U1");
    // 1e6 install plus (100 MW at $20 + 50 MW at $30) over 1752 h.
    EXPECT_NEAR(p.objective, 1e6 + (100.0 * 20.0 + 50.0 * 30.0) * 1752.0, 1e-6);
    if (have_external()) {
        const auto q = extract_plan(solve(m.ir), m, c);
        EXPECT_NEAR(q.objective, p.objective, 1e-6 * p.objective);
        EXPECT_EQ(q.added_units, p.added_units);
    }
}

TEST(BuildIgtep, ReferenceBusIsLowestId) {
    CaseSystem c = toy();
    EXPECT_EQ(reference_bus(c), 0u);
    c.buses[0].id = "10";
    c.buses[1].id = "9";
    EXPECT_EQ(reference_bus(c), 1u);
    EXPECT_EQ(parse_mode("dtlr_robust"), PlanMode::dtlr_robust);
    EXPECT_THROW(parse_mode("ac"), ModelError);
}

TEST(BuildIgtep, ZeroRobustnessIsDeterministicUpToBalanceSense) {
    for (const char* f : {"cases/toy2.json", "cases/six_bus.json", "cases/rts24.json"}) {
        const auto c = load_case(data_path(f));
        const auto det = build_igtep(c, RobustParams::deterministic(), PlanMode::dc_det);
        const auto rob = build_igtep(c, RobustParams(0.0, 0.0, 0.05), PlanMode::dc_robust);
        ASSERT_EQ(det.ir.num_rows(), rob.ir.num_rows()) << f;
        ASSERT_EQ(det.ir.num_vars(), rob.ir.num_vars()) << f;
        for (std::size_t i = 0; i < det.ir.num_rows(); ++i) {
            const auto& a = det.ir.rows()[i];
            const auto& b = rob.ir.rows()[i];
            EXPECT_EQ(a.name, b.name);
            EXPECT_EQ(a.rhs, b.rhs) << a.name;
            ASSERT_EQ(a.terms.size(), b.terms.size()) << a.name;
            for (std::size_t k = 0; k < a.terms.size(); ++k) {
                EXPECT_EQ(a.terms[k].var, b.terms[k].var);
                EXPECT_EQ(a.terms[k].coef, b.terms[k].coef);
            }
            if (a.name.rfind("bal", 0) == 0) {
                EXPECT_EQ(a.sense, Sense::eq);
                EXPECT_EQ(b.sense, Sense::ge);
            } else {
                EXPECT_EQ(a.sense, b.sense) << a.name;
            }
        }
    }
}

TEST(BuildIgtep, NoOrphansInAnyMode) {
    const auto c = load_case(data_path("cases/six_bus.json"));
    const auto s = load_scenario(data_path("scenarios/six_bus_robust.json"));
    const auto cw = apply_scenario(c, s);
    for (auto mode : {PlanMode::dc_det, PlanMode::dc_robust, PlanMode::dtlr_robust}) {
        const auto m = build_igtep(cw, s.robust, mode);
        const auto orphans = m.ir.orphan_vars();
        EXPECT_TRUE(orphans.empty()) << to_string(mode) << ": " << (orphans.empty() ? "" : m.ir.var(orphans[0]).name);
    }
}

TEST(BuildIgtep, MissingWeatherNamesLineAndPeriod) {
    auto c = toy();
    c.periods[0].weather.clear();
    try {
        build_igtep(c, RobustParams(0.05, 0.01, 0.05), PlanMode::dtlr_robust);
        FAIL() << "expected ModelError";
    } catch (const ModelError& e) {
        EXPECT_NE(std::string(e.what()).find("L1"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("d1"), std::string::npos);
    }
    EXPECT_NO_THROW(build_igtep(c, RobustParams(0.05, 0.01, 0.05), PlanMode::dc_robust));
}

TEST(BuildIgtep, InvalidCaseRejected) {
    auto c = toy();
    c.lines[0].t_max = 200.0;
    EXPECT_THROW(build_igtep(c, RobustParams::deterministic(), PlanMode::dc_det), ValidationError);
}

TEST(Dtlr, InfeasibleWhenAmpacityBelowNeed) {
    // 90 MW must cross the single line; no candidates remain.
    auto c = toy();
    c.peak_demand = 90.0;
    c.generators.pop_back();
    const double need_a = 0.9 * c.current_base_a();
    c.lines[0].t_max = 310.0;
    const auto& w = c.periods[0].weather.at("L1");
    ASSERT_LT(ampacity(c.lines[0], w), need_a);
    auto m = build_igtep(c, RobustParams(0.0, 0.0, 0.5), PlanMode::dtlr_robust, small_opts());
    EXPECT_EQ(oracle_solve(m.ir).status, SolveStatus::infeasible);

    c.lines[0].t_max = 373.0;
    ASSERT_GT(ampacity(c.lines[0], w), need_a);
    m = build_igtep(c, RobustParams(0.0, 0.0, 0.5), PlanMode::dtlr_robust, small_opts());
    EXPECT_EQ(oracle_solve(m.ir).status, SolveStatus::optimal);
}

TEST(Dtlr, ToyPlanPassesHeatBalanceAudit) {
    const auto c = toy();
    const auto m = build_igtep(c, RobustParams(0.05, 0.01, 0.05), PlanMode::dtlr_robust, small_opts());
    const auto p = solve_oracle(m, c);
    ASSERT_EQ(p.status, SolveStatus::optimal);
    ASSERT_EQ(p.hbe.size(), 1u);
    for (const auto& h : p.hbe) {
        EXPECT_TRUE(h.within()) << h.residual << " vs " << h.bound << ", ac " << h.residual_ac << " vs " << h.bound_ac;
        EXPECT_LE(h.temperature, 373.0 + 1e-6);
    }
    EXPECT_EQ(p.temperatures_k.at("L1").size(), 1u);
    EXPECT_TRUE(m.ir.orphan_vars().empty());
}

TEST(Dtlr, BindingAmpacityMatchesSteadyStateTemperature) {
    const auto c = toy_line_bound(250.0, 373.0);
    const auto m = build_igtep(c, RobustParams(0.0, 0.0, 0.5), PlanMode::dtlr_robust);
    const auto p = have_external() ? extract_plan(solve(m.ir), m, c) : solve_oracle(m, c);
    ASSERT_EQ(p.status, SolveStatus::optimal);
    ASSERT_EQ(p.hbe.size(), 1u);
    const auto& h = p.hbe[0];
    const double amp = ampacity(c.lines[0], c.periods[0].weather.at("L1"));
    // The cheap unit pushes the line to its thermal limit.
    EXPECT_NEAR(h.current_a, amp, 0.02 * amp);
    EXPECT_NEAR(h.temperature, 373.0, 1e-6);
    EXPECT_NEAR(h.steady_temperature, h.temperature, 2.0);
    EXPECT_TRUE(h.within());
}

TEST(Dtlr, AuditBoundHoldsOnSixBusWeather) {
    if (!have_external()) GTEST_SKIP() << "needs the external backend";
    const auto s = load_scenario(data_path("scenarios/six_bus_robust.json"));
    const auto c = apply_scenario(scale_to_peak(load_case(data_path("cases/six_bus.json")), 600.0), s);
    const auto m = build_igtep(c, s.robust, PlanMode::dtlr_robust);
    const auto p = extract_plan(solve(m.ir), m, c);
    ASSERT_EQ(p.status, SolveStatus::optimal);
    ASSERT_FALSE(p.hbe.empty());
    for (const auto& h : p.hbe) EXPECT_TRUE(h.within()) << h.line << "/" << h.period;
}

TEST(Dtlr, DominatesStaticRatingOnToy) {
    const auto c = toy();
    const RobustParams params(0.05, 0.01, 0.05);
    const auto dc = solve_oracle(build_igtep(c, params, PlanMode::dc_robust), c);
    const auto dt = solve_oracle(build_igtep(c, params, PlanMode::dtlr_robust, small_opts()), c);
    ASSERT_TRUE(dc.has_plan());
    ASSERT_TRUE(dt.has_plan());
    EXPECT_LE(dt.objective, dc.objective + 1e-6 * dc.objective);
}

TEST(ExtractPlan, InfeasibleHasNoPlanFields) {
    auto c = toy();
    c.peak_demand = 900.0;
    const auto m = build_igtep(c, RobustParams::deterministic(), PlanMode::dc_det);
    const auto p = solve_oracle(m, c);
    EXPECT_EQ(p.status, SolveStatus::infeasible);
    EXPECT_FALSE(p.has_plan());
    EXPECT_TRUE(p.added_units.empty());
    EXPECT_TRUE(p.dispatch_mw.empty());
}

TEST(ExtractPlan, FractionalBinaryRejected) {
    const auto c = toy();
    const auto m = build_igtep(c, RobustParams::deterministic(), PlanMode::dc_det);
    auto sol = oracle_solve(m.ir);
    sol.x[m.vars.unit_build[1].index] = 0.5;
    EXPECT_THROW(extract_plan(sol, m, c), SolveError);
}

TEST(ExtractPlan, ObjectiveMismatchRejected) {
    const auto c = toy();
    const auto m = build_igtep(c, RobustParams::deterministic(), PlanMode::dc_det);
    const auto sol = oracle_solve(m.ir);
    auto other = c;
    other.generators[0].op_cost += 1.0;
    EXPECT_THROW(extract_plan(sol, m, other), SolveError);
    auto short_sol = sol;
    short_sol.x.pop_back();
    EXPECT_THROW(extract_plan(short_sol, m, c), SolveError);
}

TEST(ExtractPlan, BigMAuditListsEveryConstant) {
    const auto c = toy();
    const auto m = build_igtep(c, RobustParams::deterministic(), PlanMode::dc_det);
    const auto p = solve_oracle(m, c);
    EXPECT_EQ(p.big_m.size(), m.ir.big_m().size());
    for (const auto& b : p.big_m) {
        EXPECT_FALSE(b.provenance.empty());
        EXPECT_LE(b.utilization, 1.0 + 1e-9) << b.name;
    }
}

TEST(Properties, RobustnessMonotone) {
    std::mt19937_64 rng(61);
    int checked = 0;
    for (int trial = 0; trial < 60 && checked < 25; ++trial) {
        const auto c = random_case(rng, false);
        const double phi = uniform(rng, 0.0, 0.08), mu = uniform(rng, 0.0, 0.02), rel = uniform(rng, 0.05, 0.5);
        auto obj = [&](double f, double m, double r) -> std::optional<double> {
            const auto model = build_igtep(c, RobustParams(f, m, r), PlanMode::dc_robust);
            const auto s = oracle_solve(model.ir);
            if (s.status != SolveStatus::optimal) return std::nullopt;
            return s.objective;
        };
        const auto base = obj(phi, mu, rel);
        if (!base) continue;
        ++checked;
        const double tol = 1e-7 * (1.0 + std::abs(*base));
        if (auto up = obj(phi + 0.03, mu, rel)) EXPECT_GE(*up, *base - tol);
        if (auto up = obj(phi, mu, rel / 2)) EXPECT_GE(*up, *base - tol);
        const auto relaxed = obj(phi, mu + 0.02, rel);
        ASSERT_TRUE(relaxed.has_value());
        EXPECT_LE(*relaxed, *base + tol);
    }
    EXPECT_GE(checked, 10);
}

TEST(Properties, PeriodsDecomposeGivenTheBinaries) {
    std::mt19937_64 rng(67);
    int checked = 0;
    for (int trial = 0; trial < 40 && checked < 10; ++trial) {
        auto c = random_case(rng, false);
        if (c.periods.size() < 2) continue;
        const auto m = build_igtep(c, RobustParams(0.03, 0.01, 0.1), PlanMode::dc_robust);
        const auto full = oracle_solve(m.ir);
        if (full.status != SolveStatus::optimal) continue;
        ++checked;
        double install = 0.0;
        for (std::size_t l = 0; l < c.lines.size(); ++l)
            install += c.lines[l].install_cost * std::round(full.x[m.vars.line_build[l].index]);
        for (std::size_t g = 0; g < c.generators.size(); ++g)
            install += c.generators[g].install_cost * std::round(full.x[m.vars.unit_build[g].index]);
        double sum = install;
        for (std::size_t d = 0; d < c.periods.size(); ++d) {
            CaseSystem one = c;
            one.periods = {c.periods[d]};
            for (std::size_t b = 0; b < c.buses.size(); ++b) {
                one.buses[b].ev_forecast = {c.buses[b].ev_forecast[d]};
                one.buses[b].wind_forecast = {c.buses[b].wind_forecast[d]};
                one.buses[b].pv_forecast = {c.buses[b].pv_forecast[d]};
            }
            auto pm = build_igtep(one, RobustParams(0.03, 0.01, 0.1), PlanMode::dc_robust);
            for (std::size_t l = 0; l < c.lines.size(); ++l)
                pm.ir.fix(pm.vars.line_build[l], std::round(full.x[m.vars.line_build[l].index]));
            for (std::size_t g = 0; g < c.generators.size(); ++g)
                pm.ir.fix(pm.vars.unit_build[g], std::round(full.x[m.vars.unit_build[g].index]));
            const auto s = oracle_solve(pm.ir);
            ASSERT_EQ(s.status, SolveStatus::optimal);
            sum += s.objective - install;
        }
        EXPECT_NEAR(sum, full.objective, 1e-7 * full.objective);
    }
    EXPECT_GE(checked, 5);
}

TEST(Properties, BackendAgreesWithOracle) {
    if (!have_external()) GTEST_SKIP() << "no external backend compiled in";
    std::mt19937_64 rng(71);
    for (int i = 0; i < 20; ++i) {
        const auto inst = random_instance(rng, 8);
        const auto o = oracle_solve(inst.model.ir);
        const auto s = solve(inst.model.ir);
        ASSERT_EQ(o.status, s.status) << i << " " << to_string(inst.mode);
        if (o.status == SolveStatus::optimal)
            EXPECT_NEAR(o.objective, s.objective, 1e-6 * std::max(1.0, std::abs(o.objective))) << i;
    }
}
