#pragma once

// Dense two-phase tableau simplex for the small LPs the enumeration oracle needs.
// Dantzig pricing; after a run of degenerate pivots it switches to Bland's rule,
// which cannot cycle. A pivot cap still guards against numerical stalling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"
#include "model_ir.hpp"

namespace gridxpand {

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
    }
    return "?";
}

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    std::vector<double> x;
    std::size_t pivots = 0;
};

struct SimplexOptions {
    double tol = 1e-9;
    std::size_t pivot_cap = 200000;
    std::size_t degenerate_run_before_bland = 50;
};

namespace detail {

/// Variable substitution x = offset + sign * x' (+ optional second column for free variables).
struct ColumnMap {
    double offset = 0.0;
    double sign = 1.0;
    int col = -1;       // -1: fixed at offset
    int neg_col = -1;   // free variables: x = x+ - x-
};

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

    double& at(std::size_t r, std::size_t c) { return a_[r * (n_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return a_[r * (n_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, n_); }
    double rhs(std::size_t r) const { return at(r, n_); }
    // Row m_ holds reduced costs; its rhs holds minus the objective value.
    double& cost(std::size_t c) { return at(m_, c); }

    void pivot(std::size_t r, std::size_t c) {
        const double p = at(r, c);
        for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
        at(r, c) = 1.0;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        basis_[r] = c;
    }

    /// Optimises the cost row over columns [0, active). Returns false when unbounded.
    bool optimise(std::size_t active, const SimplexOptions& opt, std::size_t& pivots) {
        std::size_t degenerate_run = 0;
        bool bland = false;
        for (;;) {
            std::size_t enter = active;
            double best = -opt.tol;
            for (std::size_t j = 0; j < active; ++j) {
                const double d = cost(j);
                if (bland) {
                    if (d < -opt.tol) {
                        enter = j;
                        break;
                    }
                } else if (d < best) {
                    best = d;
                    enter = j;
                }
            }
            if (enter == active) return true;
            std::size_t leave = m_;
            double ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double aij = at(i, enter);
                if (aij <= opt.tol) continue;
                const double q = rhs(i) / aij;
                if (leave == m_ || q < ratio - opt.tol) {
                    leave = i;
                    ratio = q;
                } else if (q <= ratio + opt.tol && basis_[i] < basis_[leave]) {
                    leave = i;
                    ratio = std::min(ratio, q);
                }
            }
            if (leave == m_) return false;
            if (++pivots > opt.pivot_cap) throw SolveError("simplex: pivot cap reached");
            degenerate_run = ratio <= opt.tol ? degenerate_run + 1 : 0;
            if (degenerate_run >= opt.degenerate_run_before_bland) bland = true;
            pivot(leave, enter);
            for (std::size_t i = 0; i < m_; ++i)
                if (rhs(i) < 0.0 && rhs(i) > -opt.tol) rhs(i) = 0.0;
        }
    }

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void drop_row(std::size_t r) {
        // Move the last constraint row into r, then shift the cost row up.
        const std::size_t w = n_ + 1;
        if (r != m_ - 1) {
            std::copy_n(a_.begin() + static_cast<std::ptrdiff_t>((m_ - 1) * w), w,
                        a_.begin() + static_cast<std::ptrdiff_t>(r * w));
            basis_[r] = basis_[m_ - 1];
        }
        std::copy_n(a_.begin() + static_cast<std::ptrdiff_t>(m_ * w), w,
                    a_.begin() + static_cast<std::ptrdiff_t>((m_ - 1) * w));
        --m_;
        a_.resize((m_ + 1) * w);
        basis_.pop_back();
    }

private:
    std::size_t m_, n_;
    std::vector<double> a_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Solves min c.x s.t. the model's rows and bounds, treating every variable as continuous.
/// Binary variables must already be fixed by their bounds.
inline LpResult simplex_lp(const ModelIR& model, const SimplexOptions& opt = {}) {
    const auto& vars = model.vars();
    const std::size_t nv = vars.size();
    for (const auto& v : vars)
        if (v.kind == VarKind::binary && v.lower != v.upper)
            throw ModelError("simplex_lp: binary '" + v.name + "' is not fixed");
    for (const auto& v : vars)
        if (v.lower > v.upper) return {LpStatus::infeasible, 0.0, {}, 0};

    // Column layout: structural columns first.
    std::vector<detail::ColumnMap> map(nv);
    int ncols = 0;
    struct Bound {
        int col;
        double ub;
    };
    std::vector<Bound> upper_rows;
    for (std::size_t j = 0; j < nv; ++j) {
        const auto& v = vars[j];
        auto& cm = map[j];
        if (v.lower == v.upper) {
            cm.offset = v.lower;
        } else if (std::isfinite(v.lower)) {
            cm.offset = v.lower;
            cm.col = ncols++;
            if (std::isfinite(v.upper)) upper_rows.push_back({cm.col, v.upper - v.lower});
        } else if (std::isfinite(v.upper)) {
            cm.offset = v.upper;
            cm.sign = -1.0;
            cm.col = ncols++;
        } else {
            cm.col = ncols++;
            cm.neg_col = ncols++;
        }
    }

    struct DenseRow {
        std::vector<std::pair<int, double>> terms;
        Sense sense;
        double rhs;
    };
    std::vector<DenseRow> rows;
    rows.reserve(model.num_rows() + upper_rows.size());
    for (const auto& r : model.rows()) {
        DenseRow d{{}, r.sense, r.rhs};
        for (const auto& t : r.terms) {
            const auto& cm = map[t.var.index];
            d.rhs -= t.coef * cm.offset;
            if (cm.col >= 0) d.terms.emplace_back(cm.col, t.coef * cm.sign);
            if (cm.neg_col >= 0) d.terms.emplace_back(cm.neg_col, -t.coef);
        }
        if (d.terms.empty()) {
            const bool ok = (r.sense == Sense::le && d.rhs >= -1e-9) || (r.sense == Sense::ge && d.rhs <= 1e-9) ||
                            (r.sense == Sense::eq && std::abs(d.rhs) <= 1e-9);
            if (!ok) return {LpStatus::infeasible, 0.0, {}, 0};
            continue;
        }
        rows.push_back(std::move(d));
    }
    for (const auto& b : upper_rows) rows.push_back({{{b.col, 1.0}}, Sense::le, b.ub});
    for (auto& r : rows) {
        if (r.rhs < 0.0) {
            r.rhs = -r.rhs;
            for (auto& t : r.terms) t.second = -t.second;
            if (r.sense == Sense::le) r.sense = Sense::ge;
            else if (r.sense == Sense::ge) r.sense = Sense::le;
        }
    }

    // Slack / surplus then artificial columns.
    const std::size_t m = rows.size();
    std::size_t nslack = 0, nart = 0;
    for (const auto& r : rows) {
        if (r.sense != Sense::eq) ++nslack;
        if (r.sense != Sense::le) ++nart;
    }
    const std::size_t n_struct = static_cast<std::size_t>(ncols);
    const std::size_t art0 = n_struct + nslack;
    const std::size_t total = art0 + nart;
    detail::Tableau tab(m, total);
    std::size_t s = n_struct, a = art0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& r = rows[i];
        for (const auto& [c, coef] : r.terms) tab.at(i, static_cast<std::size_t>(c)) += coef;
        tab.rhs(i) = r.rhs;
        if (r.sense == Sense::le) {
            tab.at(i, s) = 1.0;
            tab.basis()[i] = s++;
        } else {
            if (r.sense == Sense::ge) tab.at(i, s++) = -1.0;
            tab.at(i, a) = 1.0;
            tab.basis()[i] = a++;
        }
    }

    LpResult res;
    // Phase 1: minimise the sum of artificials, priced out against the starting basis.
    if (nart > 0) {
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.basis()[i] < art0) continue;
            for (std::size_t j = 0; j <= total; ++j)
                if (j < art0 || j == total) tab.at(m, j) -= tab.at(i, j);
        }
        tab.optimise(total, opt, res.pivots);
        const double infeas = -tab.at(tab.rows(), total);
        double rhs_mass = 1.0;
        for (const auto& r : rows) rhs_mass += r.rhs;
        if (infeas > 1e-9 * rhs_mass) return {LpStatus::infeasible, 0.0, {}, res.pivots};
        // Pivot remaining (zero-level) artificials out, dropping redundant rows.
        for (std::size_t i = 0; i < tab.rows();) {
            if (tab.basis()[i] < art0) {
                ++i;
                continue;
            }
            std::size_t enter = art0;
            double best = 1e-9;
            for (std::size_t j = 0; j < art0; ++j)
                if (std::abs(tab.at(i, j)) > best) {
                    best = std::abs(tab.at(i, j));
                    enter = j;
                }
            if (enter == art0) {
                tab.drop_row(i);
            } else {
                tab.pivot(i, enter);
                ++i;
            }
        }
    }

    // Phase 2 cost row over the non-artificial columns.
    const std::size_t mr = tab.rows();
    for (std::size_t j = 0; j <= total; ++j) tab.at(mr, j) = 0.0;
    for (const auto& [idx, coef] : model.objective()) {
        const auto& cm = map[idx];
        if (cm.col >= 0) tab.at(mr, static_cast<std::size_t>(cm.col)) += coef * cm.sign;
        if (cm.neg_col >= 0) tab.at(mr, static_cast<std::size_t>(cm.neg_col)) -= coef;
    }
    for (std::size_t i = 0; i < mr; ++i) {
        const double cb = tab.at(mr, tab.basis()[i]);
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= total; ++j) tab.at(mr, j) -= cb * tab.at(i, j);
    }
    if (!tab.optimise(art0, opt, res.pivots)) {
        res.status = LpStatus::unbounded;
        return res;
    }

    std::vector<double> xs(total, 0.0);
    for (std::size_t i = 0; i < mr; ++i) xs[tab.basis()[i]] = tab.rhs(i);
    res.x.assign(nv, 0.0);
    for (std::size_t j = 0; j < nv; ++j) {
        const auto& cm = map[j];
        double v = cm.offset;
        if (cm.col >= 0) v += cm.sign * xs[static_cast<std::size_t>(cm.col)];
        if (cm.neg_col >= 0) v -= xs[static_cast<std::size_t>(cm.neg_col)];
        res.x[j] = v;
    }
    res.status = LpStatus::optimal;
    res.objective = model.objective_value(res.x);

    double scale = 1.0;
    for (const auto& r : model.rows()) scale = std::max(scale, std::abs(r.rhs));
    const double viol = model.max_violation(res.x);
    if (viol > 1e-6 * scale)
        throw SolveError("simplex: solution violates the model by " + std::to_string(viol) + " (numerical failure)");
    return res;
}

}  // namespace gridxpand
