#pragma once

// MILP solving: an external backend behind a small adapter interface, and an
// exhaustive oracle that enumerates binaries and solves each LP with the simplex.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "error.hpp"
#include "model_ir.hpp"
#include "simplex.hpp"

namespace gridxpand {

enum class Backend { external, oracle };

inline const char* to_string(Backend b) { return b == Backend::external ? "external" : "oracle"; }

inline Backend parse_backend(const std::string& s) {
    if (s == "external") return Backend::external;
    if (s == "oracle") return Backend::oracle;
    throw ModelError("unknown backend '" + s + "' (expected external or oracle)");
}

inline constexpr std::size_t kMaxEnumeratedBinaries = 24;

struct SolveConfig {
    Backend backend = Backend::external;
    double time_limit = 600.0;  // s
    double mip_gap = 1e-6;      // relative
    std::size_t binary_enumeration_cap = 20;
    int threads = 1;
    int seed = 0;

    void validate() const {
        if (!(time_limit > 0.0)) throw ModelError("time limit must be positive");
        if (!(mip_gap >= 0.0 && mip_gap < 1.0)) throw ModelError("MIP gap must lie in [0, 1)");
        if (binary_enumeration_cap > kMaxEnumeratedBinaries)
            throw ModelError("binary enumeration cap must not exceed 24");
    }
};

enum class SolveStatus { optimal, infeasible, unbounded, limit };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::limit: return "limit";
    }
    return "?";
}

struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    double objective = 0.0;
    double bound = 0.0;      // proven lower bound (minimisation)
    std::vector<double> x;   // empty unless an incumbent exists
    std::string backend;
    double seconds = 0.0;
    std::size_t lp_solves = 0;

    bool has_incumbent() const { return !x.empty(); }
};

/// Enumerates every assignment of the binaries not fixed by their bounds and keeps the best LP.
/// Ties keep the first assignment in enumeration order, so the result is deterministic.
inline Solution oracle_solve(const ModelIR& model, std::size_t cap = kMaxEnumeratedBinaries) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto free = model.free_binaries();
    if (cap > kMaxEnumeratedBinaries) cap = kMaxEnumeratedBinaries;
    if (free.size() > cap)
        throw SolveError("oracle: " + std::to_string(free.size()) + " free binaries exceed the enumeration cap of " +
                         std::to_string(cap));
    ModelIR work = model;
    for (const auto& v : work.vars())
        if (v.kind == VarKind::binary && v.lower == v.upper && v.lower != 0.0 && v.lower != 1.0)
            throw ModelError("oracle: binary '" + v.name + "' fixed to a fractional value");

    Solution best;
    best.backend = "oracle";
    bool found = false;
    const std::uint64_t count = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (std::size_t k = 0; k < free.size(); ++k) work.fix(free[k], (mask >> k) & 1U ? 1.0 : 0.0);
        const auto lp = simplex_lp(work);
        ++best.lp_solves;
        if (lp.status == LpStatus::unbounded) {
            best.status = SolveStatus::unbounded;
            best.x.clear();
            break;
        }
        if (lp.status != LpStatus::optimal) continue;
        if (!found || lp.objective < best.objective - 1e-9 * (1.0 + std::abs(best.objective))) {
            found = true;
            best.status = SolveStatus::optimal;
            best.objective = lp.objective;
            best.bound = lp.objective;
            best.x = lp.x;
        }
    }
    best.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

/// Thin interface every external MILP solver is wrapped in. One adapter instance owns
/// one solver instance; adapters are never shared between concurrent solves.
class SolverAdapter {
public:
    virtual ~SolverAdapter() = default;
    virtual std::string name() const = 0;
    virtual void declare_variable(const Variable& v) = 0;
    virtual void add_row(const Constraint& row) = 0;
    virtual void set_objective(const std::vector<double>& coefs, double constant) = 0;
    virtual void solve(const SolveConfig& cfg) = 0;
    virtual SolveStatus status() const = 0;
    virtual double objective() const = 0;
    virtual double bound() const = 0;
    virtual std::vector<double> values() const = 0;
};

/// Creates the pinned external adapter; throws BackendUnavailable when none was compiled in.
inline std::unique_ptr<SolverAdapter> make_external_adapter();

inline Solution solve_with(SolverAdapter& adapter, const ModelIR& model, const SolveConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& v : model.vars()) adapter.declare_variable(v);
    for (const auto& r : model.rows()) adapter.add_row(r);
    adapter.set_objective(model.objective_dense(), model.objective_constant());
    adapter.solve(cfg);
    Solution s;
    s.backend = adapter.name();
    s.status = adapter.status();
    if (s.status == SolveStatus::optimal || s.status == SolveStatus::limit) {
        s.x = adapter.values();
        if (!s.x.empty()) s.objective = model.objective_value(s.x);
        s.bound = adapter.bound();
    }
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

inline Solution solve(const ModelIR& model, const SolveConfig& cfg = {}) {
    cfg.validate();
    if (cfg.backend == Backend::oracle) return oracle_solve(model, cfg.binary_enumeration_cap);
    auto adapter = make_external_adapter();
    return solve_with(*adapter, model, cfg);
}

}  // namespace gridxpand

#ifdef GRIDXPAND_HAVE_HIGHS
#include "highs_adapter.hpp"
#else
inline std::unique_ptr<gridxpand::SolverAdapter> gridxpand::make_external_adapter() {
    throw BackendUnavailable("no external MILP backend was compiled in (rebuild with HiGHS, or use --backend oracle)");
}
#endif
