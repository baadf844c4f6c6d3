#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "icb/rational.hpp"

namespace icb {

enum class Relation { kLessEq, kGreaterEq, kEqual };

// Sparse row: variable index -> coefficient, plus relation and right side.
struct LinearConstraint {
    std::vector<std::pair<int, Rational>> terms;
    Relation relation = Relation::kLessEq;
    Rational rhs;
};

// A maximization LP over variables with finite lower bounds and optional
// upper bounds.
class LinearProgram {
public:
    int add_variable(Rational lower, std::optional<Rational> upper,
                     Rational objective);
    void add_constraint(LinearConstraint c);

    int variable_count() const { return static_cast<int>(lower_.size()); }
    int constraint_count() const { return static_cast<int>(rows_.size()); }
    const std::vector<LinearConstraint>& constraints() const { return rows_; }
    const Rational& lower(int j) const { return lower_[j]; }
    const std::optional<Rational>& upper(int j) const { return upper_[j]; }
    const Rational& objective(int j) const { return objective_[j]; }

private:
    friend class IncrementalSimplex;
    std::vector<Rational> lower_;
    std::vector<std::optional<Rational>> upper_;
    std::vector<Rational> objective_;
    std::vector<LinearConstraint> rows_;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded };

struct Solution {
    SolveStatus status = SolveStatus::kOptimal;
    Rational objective;
    std::vector<Rational> values;  // one per variable, empty unless optimal
    long pivots = 0;

    // Exact value of a sparse row at this solution.
    Rational evaluate(const std::vector<std::pair<int, Rational>>& terms) const;
};

// Exact bounded-variable simplex over a tableau that persists across edits:
// rows and columns appended after a solve are folded into the current basis
// and repaired with dual pivots, so cutting-plane loops pay only for the
// repair, not a fresh solve. Deterministic; Dantzig pricing with a Bland
// fallback on degenerate stalls guarantees termination.
class IncrementalSimplex {
public:
    IncrementalSimplex();
    ~IncrementalSimplex();
    IncrementalSimplex(IncrementalSimplex&&) noexcept;
    IncrementalSimplex& operator=(IncrementalSimplex&&) noexcept;

    int add_variable(Rational lower, std::optional<Rational> upper,
                     Rational objective);
    void add_constraint(LinearConstraint c);
    Solution solve();

    int variable_count() const;

private:
    class Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrapper.
Solution maximize(const LinearProgram& lp);

}  // namespace icb
