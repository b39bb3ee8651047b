#pragma once

// HiGHS behind the SolverAdapter interface. Only included when the build found HiGHS.

#include <memory>
#include <string>
#include <vector>

#include <Highs.h>

#include "solve.hpp"

namespace gridxpand {

class HighsAdapter final : public SolverAdapter {
public:
    std::string name() const override { return "highs"; }

    void declare_variable(const Variable& v) override {
        lp_.col_lower_.push_back(v.lower);
        lp_.col_upper_.push_back(v.upper);
        lp_.col_cost_.push_back(0.0);
        lp_.integrality_.push_back(v.kind == VarKind::binary ? HighsVarType::kInteger : HighsVarType::kContinuous);
    }

    void add_row(const Constraint& row) override {
        const double lo = row.sense == Sense::le ? -kHighsInf : row.rhs;
        const double hi = row.sense == Sense::ge ? kHighsInf : row.rhs;
        lp_.row_lower_.push_back(lo);
        lp_.row_upper_.push_back(hi);
        for (const auto& t : row.terms) {
            rows_idx_.push_back(static_cast<HighsInt>(t.var.index));
            rows_val_.push_back(t.coef);
        }
        row_start_.push_back(static_cast<HighsInt>(rows_idx_.size()));
    }

    void set_objective(const std::vector<double>& coefs, double constant) override {
        lp_.col_cost_ = coefs;
        lp_.offset_ = constant;
    }

    void solve(const SolveConfig& cfg) override {
        lp_.num_col_ = static_cast<HighsInt>(lp_.col_cost_.size());
        lp_.num_row_ = static_cast<HighsInt>(lp_.row_lower_.size());
        lp_.sense_ = ObjSense::kMinimize;
        lp_.a_matrix_.format_ = MatrixFormat::kRowwise;
        lp_.a_matrix_.num_col_ = lp_.num_col_;
        lp_.a_matrix_.num_row_ = lp_.num_row_;
        lp_.a_matrix_.start_ = row_start_;
        lp_.a_matrix_.index_ = rows_idx_;
        lp_.a_matrix_.value_ = rows_val_;
        bool any_int = false;
        for (auto t : lp_.integrality_) any_int = any_int || t == HighsVarType::kInteger;
        if (!any_int) lp_.integrality_.clear();

        highs_.setOptionValue("output_flag", false);
        highs_.setOptionValue("threads", cfg.threads);
        highs_.setOptionValue("random_seed", cfg.seed);
        highs_.setOptionValue("time_limit", cfg.time_limit);
        highs_.setOptionValue("mip_rel_gap", cfg.mip_gap);
        highs_.setOptionValue("mip_abs_gap", 1e-9);
        highs_.setOptionValue("mip_feasibility_tolerance", 1e-7);
        highs_.setOptionValue("primal_feasibility_tolerance", 1e-8);
        if (highs_.passModel(lp_) == HighsStatus::kError) throw SolveError("highs: model rejected");
        if (highs_.run() == HighsStatus::kError) throw SolveError("highs: solver error");

        switch (highs_.getModelStatus()) {
            case HighsModelStatus::kOptimal:
            case HighsModelStatus::kModelEmpty: status_ = SolveStatus::optimal; break;
            case HighsModelStatus::kInfeasible:
            case HighsModelStatus::kUnboundedOrInfeasible: status_ = SolveStatus::infeasible; break;
            case HighsModelStatus::kUnbounded: status_ = SolveStatus::unbounded; break;
            case HighsModelStatus::kTimeLimit:
            case HighsModelStatus::kIterationLimit:
            case HighsModelStatus::kSolutionLimit:
            case HighsModelStatus::kInterrupt: status_ = SolveStatus::limit; break;
            default:
                throw SolveError("highs: unexpected model status '" +
                                 highs_.modelStatusToString(highs_.getModelStatus()) + "'");
        }
        const auto& info = highs_.getInfo();
        has_values_ = info.primal_solution_status == kSolutionStatusFeasible;
        if (!has_values_ && status_ == SolveStatus::optimal && lp_.num_col_ > 0)
            throw SolveError("highs: optimal status without a feasible solution");
        bound_ = any_int ? info.mip_dual_bound : info.objective_function_value;
    }

    SolveStatus status() const override { return status_; }
    double objective() const override { return highs_.getInfo().objective_function_value; }
    double bound() const override { return bound_; }
    std::vector<double> values() const override {
        if (!has_values_) return {};
        return highs_.getSolution().col_value;
    }

private:
    static constexpr double kHighsInf = 1e30;
    Highs highs_;
    HighsLp lp_;
    std::vector<HighsInt> row_start_{0};
    std::vector<HighsInt> rows_idx_;
    std::vector<double> rows_val_;
    SolveStatus status_ = SolveStatus::infeasible;
    double bound_ = 0.0;
    bool has_values_ = false;
};

inline std::unique_ptr<SolverAdapter> make_external_adapter() { return std::make_unique<HighsAdapter>(); }

}  // namespace gridxpand
