// gridxpand: batch front end over the header-only library.
//
// Exit codes: 0 success, 1 solved but no feasible plan, 2 bad input/validation/model,
// 3 solver failure or audit contract broken.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <gridxpand/core_model.hpp>
#include <gridxpand/dtlr.hpp>
#include <gridxpand/error.hpp>
#include <gridxpand/igtep.hpp>
#include <gridxpand/linearize.hpp>
#include <gridxpand/scenario.hpp>
#include <gridxpand/solve.hpp>
#include <gridxpand/study.hpp>

namespace gx = gridxpand;

namespace {

constexpr int kExitNoPlan = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolve = 3;

struct SolveFlags {
    std::string backend = "external";
    double time_limit = 600.0;
    double gap = 1e-6;

    void add_to(CLI::App* app) {
        app->add_option("--backend", backend, "external (MILP solver) or oracle (enumeration)")
            ->check(CLI::IsMember({"external", "oracle"}));
        app->add_option("--time-limit", time_limit, "solver time limit in seconds");
        app->add_option("--gap", gap, "relative MIP gap");
    }

    gx::SolveConfig config() const {
        gx::SolveConfig c;
        c.backend = gx::parse_backend(backend);
        c.time_limit = time_limit;
        c.mip_gap = gap;
        c.validate();
        return c;
    }
};

gx::Scenario scenario_or_default(const std::string& path) {
    return path.empty() ? gx::Scenario{} : gx::load_scenario(path);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gx::ParseError(path, "cannot open for writing");
    out << text;
    if (!out) throw gx::ParseError(path, "write failed");
}

std::vector<double> parse_peaks(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty()) throw gx::ParseError("--peaks", "not a number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<gx::PlanMode> parse_modes(const std::string& text) {
    std::vector<gx::PlanMode> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(gx::parse_mode(item));
    return out;
}

int cmd_validate(const std::string& case_path) {
    const auto c = gx::parse_case_text(gx::read_text_file(case_path), case_path);
    const auto v = gx::validate_case(c);
    if (!v.empty()) {
        std::cerr << case_path << ": " << v.size() << " violation(s)\n";
        for (const auto& x : v) std::cerr << "  - " << x.to_string() << "\n";
        return kExitInput;
    }
    std::size_t cand_lines = 0, cand_units = 0;
    for (const auto& l : c.lines) cand_lines += l.candidate;
    for (const auto& g : c.generators) cand_units += g.candidate;
    std::printf("%s: ok (%zu buses, %zu lines of which %zu candidate, %zu units of which %zu candidate, %zu periods)\n",
                case_path.c_str(), c.buses.size(), c.lines.size(), cand_lines, c.generators.size(), cand_units,
                c.periods.size());
    return 0;
}

struct PlanArgs {
    std::string case_path, scenario_path, mode = "dc_robust", out, lp;
    std::optional<double> peak;
};

int cmd_plan(const PlanArgs& a, const SolveFlags& f) {
    const auto c = gx::load_case(a.case_path);
    const auto s = scenario_or_default(a.scenario_path);
    const auto result = gx::run_plan(c, s, gx::parse_mode(a.mode), f.config(), a.peak, !a.lp.empty());
    if (!a.lp.empty()) write_file(a.lp, result.lp_text);
    if (!a.out.empty()) write_file(a.out, gx::plan_to_json(result.plan).dump(2) + "\n");
    const auto& p = result.plan;
    std::cout << gx::plan_table(p);
    std::printf("status %s, backend %s, %.2f s, model %zu vars / %zu rows / %zu binaries\n", gx::to_string(p.status),
                p.backend.c_str(), p.seconds, p.num_vars, p.num_rows, p.num_binaries);
    if (!p.has_plan()) return kExitNoPlan;
    std::printf("objective $%.2f (recomputed from case data)\n", p.objective);
    std::size_t binding = 0;
    for (const auto& b : p.big_m) binding += b.binding;
    std::printf("big-M constants: %zu logged, %zu with operand at its bound\n", p.big_m.size(), binding);
    if (!p.hbe.empty()) {
        std::size_t ok = 0;
        double worst = -INFINITY;
        for (const auto& h : p.hbe) {
            ok += h.within();
            worst = std::max(worst, h.residual - h.bound);
        }
        std::printf("heat-balance audit: %zu/%zu (line, period) residuals within bound, worst margin %.4f W/m\n", ok,
                    p.hbe.size(), worst);
        if (ok != p.hbe.size()) {
            std::cerr << "heat-balance audit failed\n";
            return kExitSolve;
        }
    }
    return 0;
}

int cmd_sweep(const std::string& case_path, const std::string& scenario_path, const std::string& peaks,
              const std::string& modes, const std::string& out, unsigned workers, const SolveFlags& f) {
    const auto c = gx::load_case(case_path);
    const auto s = scenario_or_default(scenario_path);
    gx::SweepSpec spec{parse_peaks(peaks), parse_modes(modes), out};
    const auto rows = gx::run_sweep(c, s, spec, f.config(), workers);
    std::cout << gx::sweep_table(rows);
    if (!out.empty()) write_file(out, gx::sweep_to_json(c.name, spec, rows).dump(2) + "\n");
    for (const auto& r : rows)
        if (r.status == "error") return kExitSolve;
    return 0;
}

int cmd_rate(const std::string& case_path, const std::string& scenario_path, std::optional<double> current_a) {
    auto c = gx::apply_scenario(gx::load_case(case_path), scenario_or_default(scenario_path));
    std::printf("%-10s %-8s %9s %9s %11s %11s %12s\n", "line", "period", "ambient", "wind", "ampacity_A", "ampacity_pu",
                current_a ? "T_at_I (K)" : "T_at_0 (K)");
    bool any = false;
    for (const auto& per : c.periods)
        for (const auto& l : c.lines) {
            auto it = per.weather.find(l.id);
            if (it == per.weather.end()) continue;
            any = true;
            const auto& w = it->second;
            const double amp = gx::ampacity(l, w);
            const double t = gx::steady_state_temperature(current_a.value_or(0.0), w, l.conductor, l.resistance_per_m());
            std::printf("%-10s %-8s %9.2f %9.2f %11.2f %11.4f %12.3f\n", l.id.c_str(), per.id.c_str(), w.ambient_k,
                        w.wind_mps, amp, amp / c.current_base_a(), t);
        }
    if (!any) throw gx::ModelError("no weather in the case or scenario; nothing to rate");
    return 0;
}

void print_segment(const char* name, const gx::Segment& s) {
    std::printf("%-14s %12.6g %12.6g  [%9.4g, %9.4g] %12.4g %10.4f%% %10.4f%%\n", name, s.slope, s.intercept, s.lo, s.hi,
                s.max_abs_err, 100.0 * s.max_rel_err, 100.0 * s.edge_rel_err);
}

int cmd_fit() {
    const auto t = gx::trig_segments();
    const auto r = gx::trig_segments_refit();
    const auto ln = gx::radiation_ln_fit(0.75, 2.5e-9, 298.0);
    std::printf("%-14s %12s %12s  %-22s %12s %11s %11s\n", "segment", "slope", "intercept", "domain", "max_abs",
                "max_rel", "edge_rel");
    print_segment("cos (x<0)", t.cos_neg);
    print_segment("cos (x>=0)", t.cos_pos);
    print_segment("sin", t.sin);
    print_segment("cos refit x<0", r.cos_neg);
    print_segment("cos refit x>=0", r.cos_pos);
    print_segment("sin refit", r.sin);
    print_segment("ln T", ln.temp_side);
    print_segment("ln Q", ln.q_side);
    std::printf("\nradiation link at eK=%.4g, Te=%.1f K: Q ~ %.5f T %+.4f W/m on [273, 373] K (over %.3f, under %.3f)\n",
                ln.rad_factor, ln.ambient, ln.slope, ln.offset, ln.max_over, ln.max_under);
    std::printf("max_rel is pointwise |f-L|/|f|; edge_rel is |f-L|/|L| at the domain ends\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generation and transmission expansion planning with dynamic line ratings"};
    app.require_subcommand(1);

    std::string case_path, scenario_path;
    auto* validate = app.add_subcommand("validate", "check a case file against every invariant");
    validate->add_option("--case", case_path, "case file")->required();

    PlanArgs plan_args;
    SolveFlags plan_flags;
    auto* plan = app.add_subcommand("plan", "solve one expansion plan");
    plan->add_option("--case", plan_args.case_path, "case file")->required();
    plan->add_option("--scenario", plan_args.scenario_path, "scenario file (robust parameters, weather)");
    plan->add_option("--mode", plan_args.mode, "dc_det, dc_robust or dtlr_robust");
    plan->add_option("--peak", plan_args.peak, "rescale the case to this annual peak (MW)");
    plan->add_option("--out", plan_args.out, "write the result file here");
    plan->add_option("--lp", plan_args.lp, "write the model in LP format here");
    plan_flags.add_to(plan);

    std::string peaks, modes = "dc_robust,dtlr_robust", sweep_out;
    unsigned workers = 0;
    SolveFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "solve one plan per (peak, mode)");
    sweep->add_option("--case", case_path, "case file")->required();
    sweep->add_option("--scenario", scenario_path, "scenario file");
    sweep->add_option("--peaks", peaks, "comma-separated, strictly increasing peaks (MW)")->required();
    sweep->add_option("--modes", modes, "comma-separated modes");
    sweep->add_option("--mode", modes, "alias of --modes");
    sweep->add_option("--out", sweep_out, "write the sweep report here");
    sweep->add_option("--workers", workers, "parallel rows (0: one per hardware thread)");
    sweep_flags.add_to(sweep);

    std::optional<double> current;
    auto* rate = app.add_subcommand("rate", "ampacity of every line under its weather");
    rate->add_option("--case", case_path, "case file")->required();
    rate->add_option("--scenario", scenario_path, "scenario file supplying weather");
    rate->add_option("--current", current, "also report the steady temperature at this current (A)");

    app.add_subcommand("fit", "print the linearisation certificates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*validate) return cmd_validate(case_path);
        if (*plan) return cmd_plan(plan_args, plan_flags);
        if (*sweep) return cmd_sweep(case_path, scenario_path, peaks, modes, sweep_out, workers, sweep_flags);
        if (*rate) return cmd_rate(case_path, scenario_path, current);
        return cmd_fit();
    } catch (const gx::SolveError& e) {
        std::cerr << "solve error: " << e.what() << "\n";
        return kExitSolve;
    } catch (const gx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
