#pragma once

// Batch studies: one plan, or a peak-demand sweep across modes, with the result
// files and the tables printed by the command-line tool.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "core_model.hpp"
#include "error.hpp"
#include "igtep.hpp"
#include "scenario.hpp"
#include "solve.hpp"

namespace gridxpand {

inline constexpr std::string_view kResultSchema = "gridxpand-result/1";
inline constexpr std::string_view kSweepSchema = "gridxpand-sweep/1";
inline constexpr double kCurrencyUnit = 1e7;  // tables print $ x 10^7

struct StudyOutput {
    PlanResult plan;
    std::string lp_text;  // filled only when asked for
};

/// Builds, solves and decodes one plan. The case is rescaled to `peak` when given and
/// the scenario's weather is merged in first.
inline StudyOutput run_plan(const CaseSystem& base, const Scenario& scenario, PlanMode mode, const SolveConfig& cfg,
                            std::optional<double> peak = std::nullopt, bool want_lp = false) {
    CaseSystem c = apply_scenario(peak ? scale_to_peak(base, *peak) : base, scenario);
    BuildOptions opt;
    opt.ohmic_tangents = scenario.ohmic_tangents;
    const IgtepModel model = build_igtep(c, scenario.robust, mode, opt);
    StudyOutput out;
    if (want_lp) out.lp_text = write_lp(model.ir);
    out.plan = extract_plan(solve(model.ir, cfg), model, c);
    return out;
}

inline std::string format_currency(double dollars) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", dollars / kCurrencyUnit);
    return buf;
}

inline bool plan_feasible(const PlanResult& p) { return p.has_plan(); }

inline json plan_to_json(const PlanResult& p) {
    json j{{"schema", kResultSchema},
           {"case", p.case_name},
           {"mode", to_string(p.mode)},
           {"peak_demand", p.peak_demand},
           {"status", to_string(p.status)},
           {"backend", p.backend},
           {"model", {{"variables", p.num_vars}, {"rows", p.num_rows}, {"binaries", p.num_binaries}}}};
    if (!p.has_plan()) return j;
    j["objective"] = p.objective;
    j["bound"] = p.bound;
    j["added_lines"] = p.added_lines;
    j["added_units"] = p.added_units;
    j["added_element_number"] = p.added_count();
    j["periods"] = p.period_ids;
    j["dispatch_mw"] = p.dispatch_mw;
    j["flows_pu"] = p.flows_pu;
    if (p.mode == PlanMode::dtlr_robust) {
        j["temperatures_k"] = p.temperatures_k;
        j["currents_pu"] = p.currents_pu;
    }
    json bm = json::array();
    for (const auto& b : p.big_m)
        bm.push_back({{"name", b.name},
                      {"provenance", b.provenance},
                      {"value", b.value},
                      {"operand", b.operand},
                      {"utilization", b.utilization},
                      {"binding", b.binding}});
    j["big_m"] = bm;
    json hb = json::array();
    for (const auto& h : p.hbe)
        hb.push_back({{"line", h.line},
                      {"period", h.period},
                      {"temperature_k", h.temperature},
                      {"steady_temperature_k", h.steady_temperature},
                      {"current_pu", h.current_pu},
                      {"current_a", h.current_a},
                      {"residual_w_per_m", h.residual},
                      {"bound_w_per_m", h.bound},
                      {"residual_ac_w_per_m", h.residual_ac},
                      {"bound_ac_w_per_m", h.bound_ac},
                      {"within_bound", h.within()}});
    j["hbe_audit"] = hb;
    return j;
}

inline std::string join_or_dash(const std::vector<std::string>& v) {
    if (v.empty()) return "-";
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
}

/// One row in the layout of the published tables.
inline std::string plan_table(const PlanResult& p) {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %-11s %-24s %-40s %-7s %s\n", "peak (MW)", "mode", "added lines",
                  "added units", "count", "objective ($1e7)");
    os << buf;
    const std::string obj = p.has_plan() ? format_currency(p.objective) : "Infeasible";
    std::snprintf(buf, sizeof buf, "%-12g %-11s %-24s %-40s %-7zu %s\n", p.peak_demand, to_string(p.mode),
                  join_or_dash(p.added_lines).c_str(), join_or_dash(p.added_units).c_str(),
                  p.has_plan() ? p.added_count() : std::size_t{0}, obj.c_str());
    os << buf;
    return os.str();
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepSpec {
    std::vector<double> peaks;  // MW, strictly increasing
    std::vector<PlanMode> modes;
    std::string output;

    void validate() const {
        if (peaks.empty()) throw ModelError("sweep needs at least one peak");
        if (modes.empty()) throw ModelError("sweep needs at least one mode");
        for (std::size_t i = 0; i < peaks.size(); ++i) {
            if (!(peaks[i] > 0.0)) throw ModelError("sweep peaks must be positive");
            if (i > 0 && !(peaks[i] > peaks[i - 1])) throw ModelError("sweep peaks must be strictly increasing");
        }
    }
};

struct SweepRow {
    double peak = 0.0;
    PlanMode mode = PlanMode::dc_det;
    std::string status;  // solver status, or "error"
    std::vector<std::string> added_lines;
    std::vector<std::string> added_units;
    std::optional<double> objective;
    std::string error;
    double seconds = 0.0;  // not written to the report: it would break byte-identical output
};

/// Rows are ordered by (mode, peak) regardless of which worker finished first.
inline std::vector<SweepRow> run_sweep(const CaseSystem& base, const Scenario& scenario, const SweepSpec& spec,
                                       const SolveConfig& cfg, unsigned workers = 0) {
    spec.validate();
    std::vector<SweepRow> rows;
    for (auto mode : spec.modes)
        for (double peak : spec.peaks) rows.push_back({peak, mode, "", {}, {}, std::nullopt, "", 0.0});
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(rows.size()));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            auto& row = rows[i];
            try {
                const auto out = run_plan(base, scenario, row.mode, cfg, row.peak);
                row.status = to_string(out.plan.status);
                row.seconds = out.plan.seconds;
                if (out.plan.has_plan()) {
                    row.added_lines = out.plan.added_lines;
                    row.added_units = out.plan.added_units;
                    row.objective = out.plan.objective;
                }
            } catch (const std::exception& e) {
                row.status = "error";
                row.error = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    return rows;
}

inline json sweep_to_json(const std::string& case_name, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json j{{"peak_demand", r.peak},
               {"mode", to_string(r.mode)},
               {"status", r.status},
               {"added_lines", r.added_lines},
               {"added_units", r.added_units},
               {"added_element_number", r.added_lines.size() + r.added_units.size()}};
        j["objective"] = r.objective ? json(*r.objective) : json(nullptr);
        if (!r.error.empty()) j["error"] = r.error;
        arr.push_back(std::move(j));
    }
    json modes = json::array();
    for (auto m : spec.modes) modes.push_back(to_string(m));
    return {{"schema", kSweepSchema}, {"case", case_name}, {"peaks", spec.peaks}, {"modes", modes}, {"rows", arr}};
}

inline std::string sweep_table(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-10s %-11s %-20s %-48s %-6s %s\n", "peak (MW)", "mode", "added lines",
                  "added units", "count", "objective ($1e7)");
    os << buf;
    for (const auto& r : rows) {
        std::string obj = r.objective ? format_currency(*r.objective) : "Infeasible";
        if (r.status == "error") obj = "error: " + r.error;
        else if (r.status == "limit" && !r.objective) obj = "limit";
        std::snprintf(buf, sizeof buf, "%-10g %-11s %-20s %-48s %-6zu %s\n", r.peak, to_string(r.mode),
                      join_or_dash(r.added_lines).c_str(), join_or_dash(r.added_units).c_str(),
                      r.added_lines.size() + r.added_units.size(), obj.c_str());
        os << buf;
    }
    return os.str();
}

/// First peak of `mode` without a plan, if any.
inline std::optional<double> first_infeasible_peak(const std::vector<SweepRow>& rows, PlanMode mode) {
    for (const auto& r : rows)
        if (r.mode == mode && !r.objective) return r.peak;
    return std::nullopt;
}

}  // namespace gridxpand
