#include "icb/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace icb {

int LinearProgram::add_variable(Rational lower, std::optional<Rational> upper,
                                Rational objective) {
    if (upper && *upper < lower)
        throw std::invalid_argument("variable upper bound below lower bound");
    lower_.push_back(std::move(lower));
    upper_.push_back(std::move(upper));
    objective_.push_back(std::move(objective));
    return static_cast<int>(lower_.size()) - 1;
}

void LinearProgram::add_constraint(LinearConstraint c) {
    for (const auto& [var, coef] : c.terms) {
        if (var < 0 || var >= variable_count())
            throw std::invalid_argument("constraint references unknown variable");
        (void)coef;
    }
    rows_.push_back(std::move(c));
}

Rational Solution::evaluate(const std::vector<std::pair<int, Rational>>& terms) const {
    Rational v(0);
    for (const auto& [var, coef] : terms) v += coef * values[var];
    return v;
}

namespace {
constexpr int kStallLimit = 60;        // degenerate pivots before Bland kicks in
constexpr long kDualPivotCap = 20000;  // dual repair budget before a fresh solve
}  // namespace

// Bounded-variable tableau simplex. Tableau rows are kept as B^-1 A under
// pivoting; each row owns one basic column with a unit entry, and nonbasic
// columns rest on one of their bounds. Rows and columns appended between
// solves are folded into the current basis: a new row is reduced against
// the basic columns and repaired by dual pivots, a new column is priced
// through the slack block of the tableau, which holds B^-1.
class IncrementalSimplex::Impl {
public:
    int add_variable(Rational lower, std::optional<Rational> upper, Rational objective) {
        if (upper && *upper < lower)
            throw std::invalid_argument("variable upper bound below lower bound");
        var_lower_.push_back(std::move(lower));
        var_upper_.push_back(std::move(upper));
        var_obj_.push_back(std::move(objective));
        var_col_.push_back(-1);
        const int v = static_cast<int>(var_lower_.size()) - 1;
        if (built_) {
            append_column(v);
            dirty_ = true;
        }
        return v;
    }

    void add_constraint(LinearConstraint c) {
        for (const auto& [var, coef] : c.terms) {
            if (var < 0 || var >= static_cast<int>(var_lower_.size()))
                throw std::invalid_argument("constraint references unknown variable");
            (void)coef;
        }
        if (c.relation == Relation::kGreaterEq) {
            for (auto& [var, coef] : c.terms) coef = -coef;
            c.rhs = -c.rhs;
            c.relation = Relation::kLessEq;
        }
        rows_.push_back(std::move(c));
        if (built_) {
            append_row(static_cast<int>(rows_.size()) - 1);
            dirty_ = true;
        }
    }

    int variable_count() const { return static_cast<int>(var_lower_.size()); }

    Solution solve() {
        if (!built_ || last_status_ != SolveStatus::kOptimal) build();
        pivots_ = 0;
        refresh_values_and_costs();
        SolveStatus status = optimize();
        if (status == SolveStatus::kOptimal && dual_overrun_) {
            // The dual repair hit its pivot cap at least once; rebuild from
            // scratch so the Bland guarantee applies end to end.
            build();
            refresh_values_and_costs();
            status = optimize();
        }
        last_status_ = status;
        return extract(status);
    }

private:
    // ---- tableau construction -------------------------------------------

    void build() {
        const int m = static_cast<int>(rows_.size());
        tab_.assign(m, {});
        rhs_.assign(m, Rational(0));
        beta_.assign(m, Rational(0));
        basis_.assign(m, -1);
        lower_.clear();
        upper_.clear();
        at_upper_.clear();
        in_basis_.clear();
        var_col_.assign(var_lower_.size(), -1);
        slack_col_.assign(m, -1);
        kind_.clear();
        col_var_.clear();
        structural_count_ = 0;
        dual_overrun_ = false;
        dirty_ = false;

        for (std::size_t v = 0; v < var_lower_.size(); ++v) {
            var_col_[v] = new_column(var_lower_[v], var_upper_[v], kStructural);
        }
        for (int r = 0; r < m; ++r) {
            const LinearConstraint& c = rows_[r];
            slack_col_[r] = new_column(
                Rational(0),
                c.relation == Relation::kEqual ? std::optional<Rational>(Rational(0))
                                               : std::nullopt,
                kSlack);
        }
        for (int r = 0; r < m; ++r) {
            tab_[r].assign(cols(), Rational(0));
            for (const auto& [var, coef] : rows_[r].terms)
                tab_[r][var_col_[var]] += coef;
            tab_[r][slack_col_[r]] = 1;
            rhs_[r] = rows_[r].rhs;
            set_basis(r, slack_col_[r]);
        }
        recompute_beta();

        // Rows whose slack starts outside its bounds get a +1 artificial
        // carrying the violation; phase 1 drives the artificials to zero.
        const int artificial_begin = cols();
        for (int r = 0; r < m; ++r) {
            const int slack = slack_col_[r];
            bool low = beta_[r] < lower_[slack];
            bool high = upper_[slack] && beta_[r] > *upper_[slack];
            if (!low && !high) continue;
            at_upper_[slack] = high;
            Rational violation = beta_[r] - (high ? *upper_[slack] : lower_[slack]);
            if (violation < 0) {
                for (Rational& t : tab_[r])
                    if (t != 0) t = -t;
                rhs_[r] = -rhs_[r];
                violation = -violation;
            }
            int art = new_column(Rational(0), std::nullopt, kArtificial);
            for (int rr = 0; rr < m; ++rr)
                tab_[rr].push_back(rr == r ? Rational(1) : Rational(0));
            in_basis_[basis_[r]] = -1;
            set_basis(r, art);
            beta_[r] = violation;
        }
        built_ = true;
        last_status_ = SolveStatus::kOptimal;

        if (artificial_begin < cols()) {
            reset_reduced_costs(true);
            run_primal(true);
            Rational infeasibility(0);
            for (int c = artificial_begin; c < cols(); ++c) infeasibility += value(c);
            if (infeasibility != 0) {
                infeasible_build_ = true;
                return;
            }
            // Pin the artificials at zero; basic ones stay at value zero.
            for (int c = artificial_begin; c < cols(); ++c) upper_[c] = Rational(0);
        }
        infeasible_build_ = false;
    }

    void append_column(int var) {
        const int c = new_column(var_lower_[var], var_upper_[var], kStructural);
        var_col_[var] = c;
        // B^-1 a for the new column, assembled from the slack block.
        std::vector<Rational> folded(rows_.size(), Rational(0));
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (const auto& [v, coef] : rows_[r].terms)
                if (v == var && coef != 0)
                    for (std::size_t i = 0; i < rows_.size(); ++i)
                        if (tab_[i][slack_col_[r]] != 0)
                            folded[i] += coef * tab_[i][slack_col_[r]];
        for (std::size_t i = 0; i < rows_.size(); ++i)
            tab_[i].push_back(std::move(folded[i]));
    }

    void append_row(int r) {
        const int slack = new_column(
            Rational(0),
            rows_[r].relation == Relation::kEqual ? std::optional<Rational>(Rational(0))
                                                  : std::nullopt,
            kSlack);
        slack_col_.push_back(slack);
        for (auto& row : tab_) row.resize(cols(), Rational(0));

        std::vector<Rational> fresh(cols(), Rational(0));
        for (const auto& [var, coef] : rows_[r].terms) fresh[var_col_[var]] += coef;
        fresh[slack] = 1;
        Rational fresh_rhs = rows_[r].rhs;
        // Reduce against the basic columns already in the tableau; basic
        // columns are unit vectors elsewhere, so one pass is enough.
        for (const auto& [var, coef] : rows_[r].terms) {
            const int col = var_col_[var];
            const int owner = in_basis_[col];
            if (owner < 0) continue;
            const Rational f = fresh[col];
            if (f == 0) continue;
            for (int j = 0; j < cols(); ++j)
                if (tab_[owner][j] != 0) fresh[j] -= f * tab_[owner][j];
            fresh_rhs -= f * rhs_[owner];
        }
        tab_.push_back(std::move(fresh));
        rhs_.push_back(std::move(fresh_rhs));
        basis_.push_back(-1);
        beta_.push_back(Rational(0));
        set_basis(static_cast<int>(tab_.size()) - 1, slack);
    }

    // ---- solving ---------------------------------------------------------

    SolveStatus optimize() {
        if (infeasible_build_) return SolveStatus::kInfeasible;
        if (dirty_) {
            // Warm start: flip any improving columns onto their other
            // bound, then let dual pivots absorb the appended rows.
            if (make_dual_feasible()) {
                if (!dual_repair()) return SolveStatus::kInfeasible;
            } else {
                build();
                refresh_values_and_costs();
                if (infeasible_build_) return SolveStatus::kInfeasible;
            }
            dirty_ = false;
        }
        if (!run_primal(false)) return SolveStatus::kUnbounded;
        return SolveStatus::kOptimal;
    }

    // The dual ratio test needs every nonbasic column on its attractive
    // bound. Columns that still want to improve the objective are flipped
    // to the other bound; the primal phase will move them back if needed.
    bool make_dual_feasible() {
        for (int j = 0; j < cols(); ++j) {
            if (!improving(j)) continue;
            if (!upper_[j] && !at_upper_[j]) return false;
            const Rational old_value = bound_value(j);
            at_upper_[j] = !at_upper_[j];
            const Rational shift = bound_value(j) - old_value;
            if (shift != 0)
                for (std::size_t r = 0; r < tab_.size(); ++r)
                    if (tab_[r][j] != 0) beta_[r] -= shift * tab_[r][j];
        }
        return true;
    }

    Solution extract(SolveStatus status) {
        Solution out;
        out.status = status;
        out.pivots = pivots_;
        if (status != SolveStatus::kOptimal) return out;
        out.values.resize(var_lower_.size());
        out.objective = 0;
        for (std::size_t v = 0; v < var_lower_.size(); ++v) {
            out.values[v] = value(var_col_[v]);
            if (var_obj_[v] != 0) out.objective += var_obj_[v] * out.values[v];
        }
        return out;
    }

    // Basic values and reduced costs from scratch; cheap relative to
    // pivoting and immune to stale state after appends.
    void refresh_values_and_costs() {
        recompute_beta();
        reset_reduced_costs(false);
    }

    void recompute_beta() {
        for (std::size_t r = 0; r < tab_.size(); ++r) {
            Rational v = rhs_[r];
            for (int j = 0; j < cols(); ++j) {
                if (in_basis_[j] >= 0 || tab_[r][j] == 0) continue;
                v -= tab_[r][j] * bound_value(j);
            }
            beta_[r] = v;
        }
    }

    Rational cost(int col, bool phase1) const {
        if (phase1) return kind_[col] == kArtificial ? Rational(-1) : Rational(0);
        if (kind_[col] != kStructural) return Rational(0);
        return var_obj_[var_of_col(col)];
    }

    void reset_reduced_costs(bool phase1) {
        d_.assign(cols(), Rational(0));
        for (int j = 0; j < cols(); ++j) d_[j] = cost(j, phase1);
        for (std::size_t r = 0; r < tab_.size(); ++r) {
            const Rational cb = cost(basis_[r], phase1);
            if (cb == 0) continue;
            for (int j = 0; j < cols(); ++j)
                if (tab_[r][j] != 0) d_[j] -= cb * tab_[r][j];
        }
    }

    bool improving(int j) const {
        if (in_basis_[j] >= 0) return false;
        if (upper_[j] && lower_[j] == *upper_[j]) return false;
        return at_upper_[j] ? d_[j] < 0 : d_[j] > 0;
    }

    int pick_entering(bool bland) const {
        int best = -1;
        for (int j = 0; j < cols(); ++j) {
            if (!improving(j)) continue;
            if (bland) return j;
            if (best < 0 || abs(d_[j]) > abs(d_[best])) best = j;
        }
        return best;
    }

    // Primal phase; returns false on an unbounded direction.
    bool run_primal(bool phase1) {
        if (phase1) reset_reduced_costs(true);
        int stall = 0;
        bool bland = false;
        while (true) {
            const int enter = pick_entering(bland);
            if (enter < 0) {
                if (phase1) reset_reduced_costs(false);
                return true;
            }
            const int dir = at_upper_[enter] ? -1 : 1;

            Rational limit;
            bool limited = false;
            int leave_row = -1;
            bool leave_to_upper = false;
            if (upper_[enter]) {
                limit = *upper_[enter] - lower_[enter];
                limited = true;
            }
            for (std::size_t r = 0; r < tab_.size(); ++r) {
                const Rational& a = tab_[r][enter];
                if (a == 0) continue;
                // x_basic(r) moves at rate -dir*a per unit of x_enter.
                const int bcol = basis_[r];
                Rational room;
                bool has_room = false;
                bool to_upper = false;
                if ((dir > 0) == (a < 0)) {  // basic increases
                    if (upper_[bcol]) {
                        room = (*upper_[bcol] - beta_[r]) / (-dir * a);
                        has_room = true;
                        to_upper = true;
                    }
                } else {  // basic decreases
                    room = (beta_[r] - lower_[bcol]) / (dir * a);
                    has_room = true;
                }
                if (!has_room) continue;
                if (!limited || room < limit ||
                    (room == limit && leave_row >= 0 && bcol < basis_[leave_row])) {
                    limit = room;
                    limited = true;
                    leave_row = static_cast<int>(r);
                    leave_to_upper = to_upper;
                }
            }
            if (!limited) return false;

            if (limit == 0) {
                if (++stall >= kStallLimit) bland = true;
            } else {
                stall = 0;
                bland = false;
            }

            if (leave_row < 0) {
                // Bound flip, no basis change.
                const Rational step = Rational(dir) * limit;
                for (std::size_t r = 0; r < tab_.size(); ++r)
                    if (tab_[r][enter] != 0) beta_[r] -= step * tab_[r][enter];
                at_upper_[enter] = !at_upper_[enter];
                continue;
            }
            const Rational delta = Rational(dir) * limit;
            pivot(leave_row, enter, delta, leave_to_upper);
        }
    }

    // Restores primal feasibility after appended rows, keeping the reduced
    // costs dual-feasible. Returns false when some row cannot be satisfied.
    bool dual_repair() {
        long steps = 0;
        while (true) {
            int row = -1;
            bool above = false;
            Rational worst(0);
            for (std::size_t r = 0; r < tab_.size(); ++r) {
                const int bcol = basis_[r];
                Rational gap(0);
                bool over = false;
                if (beta_[r] < lower_[bcol]) {
                    gap = lower_[bcol] - beta_[r];
                } else if (upper_[bcol] && beta_[r] > *upper_[bcol]) {
                    gap = beta_[r] - *upper_[bcol];
                    over = true;
                } else {
                    continue;
                }
                if (row < 0 || gap > worst ||
                    (gap == worst && bcol < basis_[row])) {
                    row = static_cast<int>(r);
                    worst = gap;
                    above = over;
                }
            }
            if (row < 0) return true;
            if (++steps > kDualPivotCap) {
                dual_overrun_ = true;
                return true;  // caller rebuilds from scratch
            }

            const int sign = above ? -1 : 1;  // direction the basic must move
            int enter = -1;
            Rational best_ratio;
            for (int j = 0; j < cols(); ++j) {
                if (in_basis_[j] >= 0) continue;
                if (upper_[j] && lower_[j] == *upper_[j]) continue;
                const Rational& a = tab_[row][j];
                if (a == 0) continue;
                const bool candidate =
                    at_upper_[j] ? sign * a > 0 : sign * a < 0;
                if (!candidate) continue;
                Rational ratio = d_[j] / (sign * a);
                if (ratio < 0) ratio = -ratio;  // guards exact zeros' sign
                if (enter < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && j < enter)) {
                    enter = j;
                    best_ratio = ratio;
                }
            }
            if (enter < 0) return false;  // the row cannot be repaired

            const int bcol = basis_[row];
            const Rational target = above ? *upper_[bcol] : lower_[bcol];
            const Rational delta = (beta_[row] - target) / tab_[row][enter];
            pivot(row, enter, delta, above);
        }
    }

    // Shared pivot: x_enter moves by delta off its bound, the basic of
    // `row` leaves to its lower or upper bound, then the tableau is
    // re-reduced around the new unit column.
    void pivot(int row, int enter, const Rational& delta, bool leave_to_upper) {
        const int leave = basis_[row];
        const Rational enter_value = bound_value(enter) + delta;
        for (std::size_t r = 0; r < tab_.size(); ++r) {
            if (static_cast<int>(r) == row || tab_[r][enter] == 0) continue;
            beta_[r] -= delta * tab_[r][enter];
        }

        const Rational inv = 1 / tab_[row][enter];
        if (inv != 1) {
            for (Rational& t : tab_[row])
                if (t != 0) t *= inv;
            rhs_[row] *= inv;
        }
        for (std::size_t r = 0; r < tab_.size(); ++r) {
            if (static_cast<int>(r) == row) continue;
            const Rational f = tab_[r][enter];
            if (f == 0) continue;
            for (int j = 0; j < cols(); ++j)
                if (tab_[row][j] != 0) tab_[r][j] -= f * tab_[row][j];
            rhs_[r] -= f * rhs_[row];
        }
        {
            const Rational f = d_[enter];
            if (f != 0)
                for (int j = 0; j < cols(); ++j)
                    if (tab_[row][j] != 0) d_[j] -= f * tab_[row][j];
        }

        in_basis_[leave] = -1;
        at_upper_[leave] = leave_to_upper;
        set_basis(row, enter);
        beta_[row] = enter_value;
        ++pivots_;
    }

    // ---- small helpers ----------------------------------------------------

    enum ColumnKind { kStructural, kSlack, kArtificial };

    int cols() const { return static_cast<int>(lower_.size()); }

    int new_column(Rational lower, std::optional<Rational> upper, ColumnKind kind) {
        lower_.push_back(std::move(lower));
        upper_.push_back(std::move(upper));
        at_upper_.push_back(false);
        in_basis_.push_back(-1);
        kind_.push_back(kind);
        if (kind == kStructural) col_var_.push_back(structural_count_++);
        else col_var_.push_back(-1);
        return cols() - 1;
    }

    int var_of_col(int col) const { return col_var_[col]; }

    void set_basis(int row, int col) {
        basis_[row] = col;
        in_basis_[col] = row;
    }

    Rational bound_value(int j) const { return at_upper_[j] ? *upper_[j] : lower_[j]; }

    Rational value(int j) const {
        return in_basis_[j] >= 0 ? beta_[in_basis_[j]] : bound_value(j);
    }

    // Problem data.
    std::vector<Rational> var_lower_;
    std::vector<std::optional<Rational>> var_upper_;
    std::vector<Rational> var_obj_;
    std::vector<LinearConstraint> rows_;  // normalized to <= / =

    // Tableau state.
    bool built_ = false;
    bool infeasible_build_ = false;
    bool dual_overrun_ = false;
    bool dirty_ = false;
    SolveStatus last_status_ = SolveStatus::kOptimal;
    long pivots_ = 0;
    int structural_count_ = 0;
    std::vector<std::vector<Rational>> tab_;
    std::vector<Rational> rhs_;
    std::vector<Rational> d_;
    std::vector<Rational> beta_;
    std::vector<Rational> lower_;
    std::vector<std::optional<Rational>> upper_;
    std::vector<bool> at_upper_;
    std::vector<int> basis_;      // row -> column
    std::vector<int> in_basis_;   // column -> row or -1
    std::vector<ColumnKind> kind_;
    std::vector<int> col_var_;    // column -> structural var or -1
    std::vector<int> var_col_;    // structural var -> column
    std::vector<int> slack_col_;  // row -> its slack column
};

IncrementalSimplex::IncrementalSimplex() : impl_(std::make_unique<Impl>()) {}
IncrementalSimplex::~IncrementalSimplex() = default;
IncrementalSimplex::IncrementalSimplex(IncrementalSimplex&&) noexcept = default;
IncrementalSimplex& IncrementalSimplex::operator=(IncrementalSimplex&&) noexcept = default;

int IncrementalSimplex::add_variable(Rational lower, std::optional<Rational> upper,
                                     Rational objective) {
    return impl_->add_variable(std::move(lower), std::move(upper), std::move(objective));
}

void IncrementalSimplex::add_constraint(LinearConstraint c) {
    impl_->add_constraint(std::move(c));
}

Solution IncrementalSimplex::solve() { return impl_->solve(); }

int IncrementalSimplex::variable_count() const { return impl_->variable_count(); }

Solution maximize(const LinearProgram& lp) {
    IncrementalSimplex solver;
    for (int j = 0; j < lp.variable_count(); ++j)
        solver.add_variable(lp.lower(j), lp.upper(j), lp.objective(j));
    for (const LinearConstraint& c : lp.constraints()) solver.add_constraint(c);
    return solver.solve();
}

}  // namespace icb
