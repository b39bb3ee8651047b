#pragma once

// Solver-agnostic MILP: bounded continuous/binary variables, sparse linear rows,
// a linear minimisation objective, and a log of every big-M constant used.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "error.hpp"

namespace gridxpand {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarId {
    std::size_t index = static_cast<std::size_t>(-1);

    bool valid() const noexcept { return index != static_cast<std::size_t>(-1); }
    auto operator<=>(const VarId&) const = default;
};

enum class VarKind { continuous, binary };
enum class Sense { le, ge, eq };

inline const char* to_string(Sense s) {
    switch (s) {
        case Sense::le: return "<=";
        case Sense::ge: return ">=";
        case Sense::eq: return "=";
    }
    return "?";
}

struct Variable {
    std::string name;
    VarKind kind = VarKind::continuous;
    double lower = 0.0;
    double upper = kInf;
};

struct Term {
    VarId var;
    double coef = 0.0;
};

/// Sum of coefficient * variable terms plus a constant.
struct LinearExpr {
    std::vector<Term> terms;
    double constant = 0.0;

    LinearExpr() = default;
    LinearExpr(VarId v, double c = 1.0) : terms{{v, c}} {}  // NOLINT: implicit by design of the builder API
    explicit LinearExpr(double c) : constant(c) {}

    LinearExpr& add(VarId v, double c) {
        terms.push_back({v, c});
        return *this;
    }
    LinearExpr& operator+=(const LinearExpr& o) {
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        constant += o.constant;
        return *this;
    }
    LinearExpr& operator-=(const LinearExpr& o) { return *this += o * -1.0; }
    LinearExpr& operator+=(double c) {
        constant += c;
        return *this;
    }
    friend LinearExpr operator*(LinearExpr e, double s) {
        for (auto& t : e.terms) t.coef *= s;
        e.constant *= s;
        return e;
    }
    friend LinearExpr operator*(double s, LinearExpr e) { return std::move(e) * s; }
    friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
    friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
    friend LinearExpr operator+(LinearExpr a, double c) { return a += c; }
    friend LinearExpr operator-(LinearExpr a, double c) { return a += -c; }

    double evaluate(const std::vector<double>& x) const {
        double v = constant;
        for (const auto& t : terms) v += t.coef * x.at(t.var.index);
        return v;
    }
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;  // merged: each variable at most once, no zero coefficients
    Sense sense = Sense::le;
    double rhs = 0.0;

    double activity(const std::vector<double>& x) const {
        double a = 0.0;
        for (const auto& t : terms) a += t.coef * x.at(t.var.index);
        return a;
    }
    /// Amount by which the row is violated at x (0 when satisfied).
    double violation(const std::vector<double>& x) const {
        const double a = activity(x);
        switch (sense) {
            case Sense::le: return std::max(0.0, a - rhs);
            case Sense::ge: return std::max(0.0, rhs - a);
            case Sense::eq: return std::abs(a - rhs);
        }
        return 0.0;
    }
};

/// A big-M (or X) constant, where it came from, and the expression whose magnitude it bounds.
struct BigMRecord {
    std::string name;
    double value = 0.0;
    std::string provenance;
    LinearExpr operand;
};

class ModelIR {
public:
    std::string mode;

    VarId add_var(const std::string& name, VarKind kind, double lower, double upper) {
        if (!names_.insert(name).second) throw ModelError("duplicate variable name '" + name + "'");
        if (kind == VarKind::binary) {
            lower = std::max(lower, 0.0);
            upper = std::min(upper, 1.0);
        }
        if (std::isnan(lower) || std::isnan(upper)) throw ModelError("NaN bound on '" + name + "'");
        vars_.push_back({name, kind, lower, upper});
        return VarId{vars_.size() - 1};
    }
    VarId add_continuous(const std::string& name, double lower, double upper) {
        return add_var(name, VarKind::continuous, lower, upper);
    }
    VarId add_binary(const std::string& name) { return add_var(name, VarKind::binary, 0.0, 1.0); }

    /// Adds `expr (sense) rhs`; the expression's constant moves to the right-hand side.
    std::size_t add_row(const std::string& name, const LinearExpr& expr, Sense sense, double rhs) {
        if (!row_names_.insert(name).second) throw ModelError("duplicate constraint name '" + name + "'");
        std::map<std::size_t, double> merged;
        for (const auto& t : expr.terms) {
            if (!t.var.valid() || t.var.index >= vars_.size())
                throw ModelError("constraint '" + name + "' references an undeclared variable");
            if (!std::isfinite(t.coef)) throw ModelError("non-finite coefficient in '" + name + "'");
            merged[t.var.index] += t.coef;
        }
        Constraint c{name, {}, sense, rhs - expr.constant};
        for (const auto& [idx, coef] : merged)
            if (coef != 0.0) c.terms.push_back({VarId{idx}, coef});
        rows_.push_back(std::move(c));
        return rows_.size() - 1;
    }

    void add_objective(VarId v, double coef) {
        if (!v.valid() || v.index >= vars_.size()) throw ModelError("objective references an undeclared variable");
        objective_[v.index] += coef;
    }
    void add_objective_constant(double c) { objective_constant_ += c; }

    void set_bounds(VarId v, double lower, double upper) {
        auto& var = vars_.at(v.index);
        var.lower = lower;
        var.upper = upper;
    }
    void fix(VarId v, double value) { set_bounds(v, value, value); }

    std::size_t log_big_m(std::string name, double value, std::string provenance, LinearExpr operand) {
        big_m_.push_back({std::move(name), value, std::move(provenance), std::move(operand)});
        return big_m_.size() - 1;
    }

    const std::vector<Variable>& vars() const noexcept { return vars_; }
    const std::vector<Constraint>& rows() const noexcept { return rows_; }
    const std::vector<BigMRecord>& big_m() const noexcept { return big_m_; }
    const Variable& var(VarId v) const { return vars_.at(v.index); }
    std::size_t num_vars() const noexcept { return vars_.size(); }
    std::size_t num_rows() const noexcept { return rows_.size(); }

    /// Objective as a dense coefficient vector.
    std::vector<double> objective_dense() const {
        std::vector<double> c(vars_.size(), 0.0);
        for (const auto& [idx, coef] : objective_) c[idx] = coef;
        return c;
    }
    const std::map<std::size_t, double>& objective() const noexcept { return objective_; }
    double objective_constant() const noexcept { return objective_constant_; }

    double objective_value(const std::vector<double>& x) const {
        double v = objective_constant_;
        for (const auto& [idx, coef] : objective_) v += coef * x.at(idx);
        return v;
    }

    std::size_t num_binaries() const {
        return static_cast<std::size_t>(
            std::count_if(vars_.begin(), vars_.end(), [](const Variable& v) { return v.kind == VarKind::binary; }));
    }
    /// Binaries not fixed by their bounds; these are what branching or enumeration must decide.
    std::vector<VarId> free_binaries() const {
        std::vector<VarId> out;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].kind == VarKind::binary && vars_[i].lower < vars_[i].upper) out.push_back(VarId{i});
        return out;
    }

    /// Largest bound or row violation at x, and the largest distance of a binary from {0, 1}.
    double max_violation(const std::vector<double>& x) const {
        double worst = 0.0;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            worst = std::max(worst, vars_[i].lower - x[i]);
            worst = std::max(worst, x[i] - vars_[i].upper);
        }
        for (const auto& r : rows_) worst = std::max(worst, r.violation(x));
        return worst;
    }
    double max_integrality_residual(const std::vector<double>& x) const {
        double worst = 0.0;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].kind == VarKind::binary) worst = std::max(worst, std::abs(x[i] - std::round(x[i])));
        return worst;
    }

    /// Variables that appear in no row and not in the objective.
    std::vector<VarId> orphan_vars() const {
        std::vector<bool> used(vars_.size(), false);
        for (const auto& r : rows_)
            for (const auto& t : r.terms) used[t.var.index] = true;
        for (const auto& [idx, coef] : objective_) used[idx] = used[idx] || coef != 0.0;
        std::vector<VarId> out;
        for (std::size_t i = 0; i < used.size(); ++i)
            if (!used[i]) out.push_back(VarId{i});
        return out;
    }

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
    std::map<std::size_t, double> objective_;
    double objective_constant_ = 0.0;
    std::vector<BigMRecord> big_m_;
    std::unordered_set<std::string> names_;
    std::unordered_set<std::string> row_names_;
};

// ---------------------------------------------------------------------------
// LP text export (CPLEX LP dialect) for checking a model with an external solver.

namespace detail {

inline std::string lp_name(const std::string& s) {
    std::string out;
    for (char ch : s) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                        ch == '_' || ch == '.';
        out += ok ? ch : '_';
    }
    if (out.empty() || (out[0] >= '0' && out[0] <= '9') || out[0] == '.') out = "v_" + out;
    return out;
}

inline std::string lp_num(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

inline void lp_terms(std::ostringstream& out, const std::vector<std::string>& names,
                     const std::vector<std::pair<std::size_t, double>>& terms) {
    if (terms.empty()) {
        out << " 0 " << names.front();
        return;
    }
    std::size_t col = 0;
    for (const auto& [idx, coef] : terms) {
        out << (coef < 0 ? " - " : " + ") << lp_num(std::abs(coef)) << " " << names[idx];
        if (++col % 6 == 0) out << "\n   ";
    }
}

}  // namespace detail

/// The model in CPLEX LP format: objective, constraints, bounds and binaries sections.
inline std::string write_lp(const ModelIR& m) {
    std::vector<std::string> names;
    names.reserve(m.num_vars());
    {
        std::unordered_set<std::string> used;
        for (const auto& v : m.vars()) {
            std::string n = detail::lp_name(v.name);
            while (!used.insert(n).second) n += "_";
            names.push_back(std::move(n));
        }
    }
    std::ostringstream out;
    out << "\\ mode: " << m.mode << "\n";
    for (const auto& bm : m.big_m()) out << "\\ big-M " << bm.name << " = " << detail::lp_num(bm.value) << " (" << bm.provenance << ")\n";
    out << "Minimize\n obj:";
    std::vector<std::pair<std::size_t, double>> obj(m.objective().begin(), m.objective().end());
    if (names.empty()) {
        out << " 0\n";
    } else {
        detail::lp_terms(out, names, obj);
        out << "\n";
    }
    out << "Subject To\n";
    std::unordered_set<std::string> used_rows;
    for (const auto& r : m.rows()) {
        std::string rn = detail::lp_name(r.name);
        while (!used_rows.insert(rn).second) rn += "_";
        out << " " << rn << ":";
        std::vector<std::pair<std::size_t, double>> terms;
        for (const auto& t : r.terms) terms.emplace_back(t.var.index, t.coef);
        detail::lp_terms(out, names, terms);
        out << " " << to_string(r.sense) << " " << detail::lp_num(r.rhs) << "\n";
    }
    out << "Bounds\n";
    for (std::size_t i = 0; i < m.num_vars(); ++i) {
        const auto& v = m.vars()[i];
        if (v.lower == v.upper) {
            out << " " << names[i] << " = " << detail::lp_num(v.lower) << "\n";
            continue;
        }
        out << " ";
        out << (std::isinf(v.lower) ? std::string("-inf") : detail::lp_num(v.lower));
        out << " <= " << names[i] << " <= ";
        out << (std::isinf(v.upper) ? std::string("+inf") : detail::lp_num(v.upper)) << "\n";
    }
    bool any_bin = false;
    for (std::size_t i = 0; i < m.num_vars(); ++i) {
        if (m.vars()[i].kind != VarKind::binary) continue;
        if (!any_bin) out << "Binaries\n";
        any_bin = true;
        out << " " << names[i] << "\n";
    }
    out << "End\n";
    return out.str();
}

}  // namespace gridxpand
