#include "icb/pm_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace icb {

namespace {

constexpr int kMaxLpMessages = 12;

// Variable layout: g(S) for every mask S in [0, 2^n), then the n rates,
// then (symmetric objective only) the common rate.
struct Layout {
    int n;
    int g(Subset s) const { return static_cast<int>(s); }
    int rate(int i) const { return (1 << n) + i; }
    int symmetric_rate() const { return (1 << n) + n; }
};

}  // namespace

long long PmModel::monotonicity_count() const {
    const int n = instance.message_count();
    return static_cast<long long>(n) << (n - 1);
}

long long PmModel::submodularity_count() const {
    const int n = instance.message_count();
    if (n < 2) return 0;
    return (static_cast<long long>(n) * (n - 1) / 2) << (n - 2);
}

long long PmModel::capacity_count() const {
    return (1LL << instance.message_count()) - 1;
}

long long PmModel::decoding_count() const {
    long long total = 0;
    for (int i = 0; i < instance.message_count(); ++i)
        total += reduced_decoding
                     ? (instance.interfering(i) ? 2 : 1)
                     : 1LL << count(instance.interfering(i));
    return total;
}

PmModel build_pm_model(const Instance& inst, PmObjective objective,
                       bool reduced_decoding) {
    if (inst.message_count() > kMaxLpMessages)
        throw std::invalid_argument(
            "polymatroidal model limited to 12 messages (2^n set variables)");
    return PmModel{inst, objective, reduced_decoding, {}};
}

PmInequality zy_instantiate(const std::array<Subset, 4>& missing_sets,
                            const Instance& inst) {
    const int n = inst.message_count();
    const Subset full = full_set(n);
    for (Subset s : missing_sets)
        if (s & ~full)
            throw std::invalid_argument("missing set is not a subset of [n]");
    const Subset a = missing_sets[0], b = missing_sets[1];
    const Subset c = missing_sets[2], d = missing_sets[3];

    // 3H(AC) + 3H(AD) + 3H(CD) + H(BC) + H(BD)
    //   >= 2H(C) + 2H(D) + H(AB) + H(A) + H(BCD) + 4H(ACD),
    // with the joint entropy of a union of variables carrying the
    // intersection of their missing sets: H/r = g(S) + sum of rates off S.
    const std::pair<int, Subset> entropy_terms[] = {
        {3, a & c}, {3, a & d}, {3, c & d}, {1, b & c}, {1, b & d},
        {-2, c},    {-2, d},    {-1, a & b}, {-1, a},   {-1, b & c & d},
        {-4, a & c & d},
    };

    std::map<Subset, Rational> g_coef;
    std::vector<Rational> rate_coef(n, Rational(0));
    for (const auto& [coef, s] : entropy_terms) {
        g_coef[s] += coef;
        for (int i : members(full & ~s)) rate_coef[i] += coef;
    }

    PmInequality out;
    for (auto& [s, coef] : g_coef)
        if (coef != 0) out.g_terms.emplace_back(s, coef);
    for (int i = 0; i < n; ++i)
        if (rate_coef[i] != 0) out.rate_terms.emplace_back(i, rate_coef[i]);
    return out;
}

namespace {

// Canonical elimination through the decoding identities: whenever some
// member i of S has all of S \ {i} inside its interfering set, g(S) equals
// g(S \ {i}) + R_i. Substituting the smallest such i everywhere removes
// most g variables and all the equality rows they would need; the identity
// instances not used by the substitution survive as explicit rows.
struct Reduction {
    std::vector<int> via;  // mask -> eliminated member, or -1 if irreducible

    explicit Reduction(const Instance& inst) {
        const int n = inst.message_count();
        via.assign(std::size_t{1} << n, -1);
        for (Subset s = 1; s < (Subset{1} << n); ++s)
            for (int i : members(s))
                if (subset_of(s & ~bit(i), inst.interfering(i))) {
                    via[s] = i;
                    break;
                }
    }

    bool irreducible(Subset s) const { return via[s] < 0; }

    // Adds coef * g(S) to a coefficient map over model variable ids.
    void expand(Subset s, const Rational& coef, const Layout& lay,
                std::map<int, Rational>& into) const {
        while (s && via[s] >= 0) {
            into[lay.rate(via[s])] += coef;
            s &= ~bit(via[s]);
        }
        if (s) into[lay.g(s)] += coef;
    }
};

struct ReducedRow {
    LinearConstraint row;  // over model variable ids, already substituted

    bool trivial() const { return row.terms.empty(); }
};

ReducedRow make_row(const Reduction& red, const Layout& lay,
                    const std::vector<std::pair<Subset, Rational>>& g_terms,
                    const std::vector<std::pair<int, Rational>>& rate_terms,
                    Relation relation, Rational rhs) {
    std::map<int, Rational> combined;
    for (const auto& [s, coef] : g_terms) red.expand(s, coef, lay, combined);
    for (const auto& [i, coef] : rate_terms) combined[lay.rate(i)] += coef;
    ReducedRow out;
    out.row.relation = relation;
    out.row.rhs = std::move(rhs);
    for (auto& [var, coef] : combined)
        if (coef != 0) out.row.terms.emplace_back(var, coef);
    return out;
}

// Decoding identities that the substitution did not absorb, plus the
// symmetric-rate links and any instantiated non-Shannon rows.
std::vector<LinearConstraint> base_rows(const PmModel& model, const Layout& lay,
                                        const Reduction& red) {
    const Instance& inst = model.instance;
    const int n = lay.n;
    std::vector<LinearConstraint> rows;
    for (int i = 0; i < n; ++i) {
        auto add_decoding = [&](Subset b) {
            ReducedRow r = make_row(red, lay,
                                    {{b, Rational(1)}, {b | bit(i), Rational(-1)}},
                                    {{i, Rational(1)}}, Relation::kEqual, Rational(0));
            if (!r.trivial()) rows.push_back(std::move(r.row));
        };
        const Subset interfering = inst.interfering(i);
        if (model.reduced_decoding) {
            add_decoding(0);
            if (interfering) add_decoding(interfering);
        } else {
            Subset b = 0;
            while (true) {
                add_decoding(b);
                if (b == interfering) break;
                b = (b - interfering) & interfering;
            }
        }
    }
    if (model.objective == PmObjective::kSymmetricRate)
        for (int i = 0; i < n; ++i)
            rows.push_back({{{lay.rate(i), Rational(1)},
                             {lay.symmetric_rate(), Rational(-1)}},
                            Relation::kEqual,
                            Rational(0)});
    for (const PmInequality& ineq : model.extra) {
        ReducedRow r = make_row(red, lay, ineq.g_terms, ineq.rate_terms,
                                Relation::kGreaterEq, Rational(0));
        if (!r.trivial()) rows.push_back(std::move(r.row));
    }
    return rows;
}

// The working LP materializes only variables that occur in some active row
// or in the objective; everything else sits at its lower bound (zero) and
// cannot affect the optimum. Rows arrive in batches between solves, which
// the incremental simplex absorbs with dual pivots.
class WorkingLp {
public:
    WorkingLp(const PmModel& model, const Layout& lay, const Reduction& red)
        : model_(model),
          lay_(lay),
          red_(red),
          total_((1 << lay.n) + lay.n +
                 (model.objective == PmObjective::kSymmetricRate ? 1 : 0)),
          compact_(total_, -1) {
        if (model.objective == PmObjective::kSymmetricRate) {
            touch(lay.symmetric_rate());
        } else {
            for (int i = 0; i < lay.n; ++i) touch(lay.rate(i));
        }
        for (const LinearConstraint& row : base_rows(model, lay, red)) add_row(row);
    }

    void add_row(const LinearConstraint& row) {
        LinearConstraint mapped;
        mapped.relation = row.relation;
        mapped.rhs = row.rhs;
        for (const auto& [var, coef] : row.terms)
            mapped.terms.push_back({touch(var), coef});
        solver_.add_constraint(std::move(mapped));
        ++row_count_;
    }

    int row_count() const { return row_count_; }

    // Solves, then reconstructs every g(S) through the substitution chain.
    Solution solve_full() {
        Solution sol = solver_.solve();
        if (sol.status != SolveStatus::kOptimal) return sol;
        Solution full;
        full.status = sol.status;
        full.objective = sol.objective;
        full.pivots = sol.pivots;
        full.values.assign(total_, Rational(0));
        for (std::size_t c = 0; c < active_.size(); ++c)
            full.values[active_[c]] = sol.values[c];
        for (Subset s = 1; s < (Subset{1} << lay_.n); ++s) {
            if (red_.irreducible(s)) continue;
            int i = red_.via[s];
            full.values[lay_.g(s)] =
                full.values[lay_.g(s & ~bit(i))] + full.values[lay_.rate(i)];
        }
        return full;
    }

private:
    int touch(int var) {
        if (compact_[var] >= 0) return compact_[var];
        auto [lower, upper, objective] = column(var);
        int col = solver_.add_variable(lower, upper, objective);
        compact_[var] = col;
        active_.push_back(var);
        return col;
    }

    std::tuple<Rational, std::optional<Rational>, Rational> column(int var) const {
        const int n = lay_.n;
        const bool symmetric = model_.objective == PmObjective::kSymmetricRate;
        if (var < (1 << n))
            return {Rational(0), Rational(var == 0 ? 0 : 1), Rational(0)};
        if (var < (1 << n) + n)
            return {Rational(0), Rational(1), symmetric ? Rational(0) : Rational(1)};
        return {Rational(0), Rational(1), Rational(1)};  // shared symmetric rate
    }

    const PmModel& model_;
    const Layout& lay_;
    const Reduction& red_;
    int total_;
    int row_count_ = 0;
    std::vector<int> compact_;  // model var -> solver column or -1
    std::vector<int> active_;   // solver column -> model var
    IncrementalSimplex solver_;
};

// One family row the current point violates, with its violation size for
// batch ordering.
struct ViolatedRow {
    Rational violation;
    LinearConstraint row;  // over model variable ids, substituted form
};

// ---------------------------------------------------------------------------
// Floating-point pre-solve. A plain dense bounded-variable simplex over
// doubles runs the same cutting loop first; the family rows it leaves tight
// seed the exact stage, which then typically converges in one or two
// rounds. Only row selection depends on it, never the reported value.

class FloatSimplex {
public:
    static constexpr double kEps = 1e-9;
    static constexpr double kInfinity = 1e100;

    int add_variable(double upper, double objective) {
        lower_.push_back(0.0);
        upper_.push_back(upper);
        obj_.push_back(objective);
        return static_cast<int>(lower_.size()) - 1;
    }

    // relation: rows arrive normalized as <= rhs (equalities keep a pinned
    // slack). `initial_basic` may name a column that appears in this row
    // only, with coefficient +1 and a feasible starting value rhs; the
    // solver then crashes the basis onto it instead of the slack.
    void add_row(const std::vector<std::pair<int, double>>& terms, bool equality,
                 double rhs, int initial_basic = -1) {
        rows_.push_back({terms, equality, rhs, initial_basic});
    }

    // Dantzig with a Bland fallback, iteration-capped; returns the values.
    std::vector<double> solve() {
        const int n = static_cast<int>(lower_.size());
        const int m = static_cast<int>(rows_.size());
        const int cols = n + m;
        std::vector<std::vector<double>> tab(m, std::vector<double>(cols, 0.0));
        std::vector<double> lo(lower_), hi(upper_), d(cols, 0.0), beta(m, 0.0);
        std::vector<int> basis(m), in_basis(cols, -1);
        std::vector<bool> at_upper(cols, false);
        lo.resize(cols, 0.0);
        hi.resize(cols, kInf);
        for (int r = 0; r < m; ++r) {
            for (auto& [v, c] : rows_[r].terms) tab[r][v] += c;
            tab[r][n + r] = 1.0;
            if (rows_[r].equality) hi[n + r] = 0.0;
            const int crash = rows_[r].initial_basic;
            basis[r] = crash >= 0 ? crash : n + r;
            in_basis[basis[r]] = r;
            beta[r] = rows_[r].rhs;
        }
        for (int j = 0; j < cols; ++j) d[j] = j < n ? obj_[j] : 0.0;
        for (int r = 0; r < m; ++r) {
            const double cb = basis[r] < n ? obj_[basis[r]] : 0.0;
            if (cb == 0.0) continue;
            for (int j = 0; j < cols; ++j)
                if (tab[r][j] != 0.0) d[j] -= cb * tab[r][j];
        }

        int stall = 0;
        bool bland = false;
        double objective = 0.0;
        const bool trace = std::getenv("ICB_LP_TRACE") != nullptr;
        long iter = 0;
        for (; iter < 60000; ++iter) {
            if (trace && iter % 5000 == 0)
                std::fprintf(stderr, "float iter %ld obj %.6f stall=%d bland=%d\n",
                             iter, objective, stall, bland ? 1 : 0);
            int enter = -1;
            double best = kEps;
            for (int j = 0; j < cols; ++j) {
                if (in_basis[j] >= 0 || hi[j] - lo[j] < kEps) continue;
                double gain = at_upper[j] ? -d[j] : d[j];
                if (gain > best) {
                    best = gain;
                    enter = j;
                    if (bland) break;
                }
            }
            if (enter < 0) break;
            const double dir = at_upper[enter] ? -1.0 : 1.0;
            double limit = hi[enter] < kInf ? hi[enter] - lo[enter] : kInf;
            int leave_row = -1;
            bool to_upper = false;
            for (int r = 0; r < m; ++r) {
                double a = tab[r][enter];
                if (a > -kEps && a < kEps) continue;
                double rate = -dir * a;
                double room;
                bool upperward = rate > 0;
                if (upperward) {
                    if (hi[basis[r]] >= kInf) continue;
                    room = (hi[basis[r]] - beta[r]) / rate;
                } else {
                    room = (beta[r] - lo[basis[r]]) / -rate;
                }
                if (room < -1e-7) room = 0;
                if (room < limit - kEps) {
                    limit = room;
                    leave_row = r;
                    to_upper = upperward;
                }
            }
            if (limit >= kInf) break;  // unbounded; caller's rows are wrong
            objective += (at_upper[enter] ? -d[enter] : d[enter]) * limit;
            if (limit < kEps) {
                if (++stall > 200) bland = true;
            } else {
                stall = 0;
                bland = false;
            }
            if (leave_row < 0) {
                for (int r = 0; r < m; ++r)
                    if (tab[r][enter] != 0.0) beta[r] -= dir * limit * tab[r][enter];
                at_upper[enter] = !at_upper[enter];
                continue;
            }
            const double delta = dir * limit;
            const int leave = basis[leave_row];
            const double enter_value =
                (at_upper[enter] ? hi[enter] : lo[enter]) + delta;
            for (int r = 0; r < m; ++r)
                if (r != leave_row && tab[r][enter] != 0.0)
                    beta[r] -= delta * tab[r][enter];
            double inv = 1.0 / tab[leave_row][enter];
            for (int j = 0; j < cols; ++j) tab[leave_row][j] *= inv;
            for (int r = 0; r < m; ++r) {
                if (r == leave_row) continue;
                double f = tab[r][enter];
                if (f == 0.0) continue;
                for (int j = 0; j < cols; ++j)
                    if (tab[leave_row][j] != 0.0) tab[r][j] -= f * tab[leave_row][j];
            }
            {
                double f = d[enter];
                if (f != 0.0)
                    for (int j = 0; j < cols; ++j)
                        if (tab[leave_row][j] != 0.0) d[j] -= f * tab[leave_row][j];
            }
            in_basis[leave] = -1;
            at_upper[leave] = to_upper;
            basis[leave_row] = enter;
            in_basis[enter] = leave_row;
            beta[leave_row] = enter_value;
        }

        if (trace) std::fprintf(stderr, "float done: iters %ld obj %.6f\n", iter, objective);
        std::vector<double> out(n, 0.0);
        for (int j = 0; j < n; ++j)
            out[j] = in_basis[j] >= 0 ? beta[in_basis[j]]
                                      : (at_upper[j] ? hi[j] : lo[j]);
        return out;
    }

private:
    static constexpr double kInf = kInfinity;

    struct Row {
        std::vector<std::pair<int, double>> terms;
        bool equality;
        double rhs;
        int initial_basic;
    };
    std::vector<double> lower_, upper_, obj_;
    std::vector<Row> rows_;
};

// Scans monotonicity, submodularity, and the capacity of reducible sets
// (irreducible g variables carry their bound natively). Everything is
// evaluated on the reconstructed assignment, so the produced rows are
// exactly the substituted forms that the working LP consumes.
std::vector<ViolatedRow> violated_rows(const PmModel& model, const Layout& lay,
                                       const Reduction& red,
                                       const std::vector<Rational>& x) {
    const int n = model.instance.message_count();
    std::vector<ViolatedRow> out;
    auto emit = [&](Rational violation,
                    std::initializer_list<std::pair<Subset, Rational>> g_terms,
                    Relation relation, Rational rhs) {
        ReducedRow r = make_row(red, lay, g_terms, {}, relation, std::move(rhs));
        if (!r.trivial())
            out.push_back({std::move(violation), std::move(r.row)});
    };
    // Monotonicity: g(S) <= g(S u {i}).
    for (Subset s = 0; s < static_cast<Subset>(1) << n; ++s)
        for (int i = 0; i < n; ++i) {
            if (contains(s, i)) continue;
            if (x[lay.g(s)] > x[lay.g(s | bit(i))])
                emit(x[lay.g(s)] - x[lay.g(s | bit(i))],
                     {{s, Rational(1)}, {s | bit(i), Rational(-1)}},
                     Relation::kLessEq, Rational(0));
        }
    // Elemental submodularity:
    // g(S u {i}) + g(S u {j}) >= g(S u {i,j}) + g(S), i < j, S free of both.
    for (Subset s = 0; s < static_cast<Subset>(1) << n; ++s)
        for (int i = 0; i < n; ++i) {
            if (contains(s, i)) continue;
            for (int j = i + 1; j < n; ++j) {
                if (contains(s, j)) continue;
                const Rational& gi = x[lay.g(s | bit(i))];
                const Rational& gj = x[lay.g(s | bit(j))];
                const Rational& gij = x[lay.g(s | bit(i) | bit(j))];
                const Rational& gs = x[lay.g(s)];
                if (gi + gj < gij + gs)
                    emit(gij + gs - gi - gj,
                         {{s | bit(i), Rational(1)},
                          {s | bit(j), Rational(1)},
                          {s | bit(i) | bit(j), Rational(-1)},
                          {s, Rational(-1)}},
                         Relation::kGreaterEq, Rational(0));
            }
        }
    // Capacity of reducible sets: g(S) <= 1 written over the substitution.
    for (Subset s = 1; s < static_cast<Subset>(1) << n; ++s)
        if (!red.irreducible(s) && x[lay.g(s)] > 1)
            emit(x[lay.g(s)] - 1, {{s, Rational(1)}}, Relation::kLessEq, Rational(1));
    return out;
}

constexpr int kRowsPerRound = 192;

// Every nontrivial substituted family row, deduplicated: monotonicity,
// elemental submodularity, and the capacities of reducible sets (the
// irreducible ones are plain variable bounds).
std::vector<LinearConstraint> enumerate_family_rows(const PmModel& model,
                                                    const Layout& lay,
                                                    const Reduction& red) {
    const int n = model.instance.message_count();
    std::vector<LinearConstraint> out;
    std::set<std::string> seen;
    auto add = [&](ReducedRow r) {
        if (r.trivial()) return;
        std::string key = r.row.relation == Relation::kLessEq ? "<" : ">";
        key += to_string(r.row.rhs);
        for (const auto& [var, coef] : r.row.terms)
            key += "|" + std::to_string(var) + ":" + to_string(coef);
        if (seen.insert(std::move(key)).second) out.push_back(std::move(r.row));
    };
    for (Subset s = 0; s < static_cast<Subset>(1) << n; ++s)
        for (int i = 0; i < n; ++i) {
            if (contains(s, i)) continue;
            add(make_row(red, lay, {{s, Rational(1)}, {s | bit(i), Rational(-1)}}, {},
                         Relation::kLessEq, Rational(0)));
            for (int j = i + 1; j < n; ++j) {
                if (contains(s, j)) continue;
                add(make_row(red, lay,
                             {{s | bit(i), Rational(1)},
                              {s | bit(j), Rational(1)},
                              {s | bit(i) | bit(j), Rational(-1)},
                              {s, Rational(-1)}},
                             {}, Relation::kGreaterEq, Rational(0)));
            }
        }
    for (Subset s = 1; s < static_cast<Subset>(1) << n; ++s)
        if (!red.irreducible(s))
            add(make_row(red, lay, {{s, Rational(1)}}, {}, Relation::kLessEq,
                         Rational(1)));
    return out;
}

// Solves the dual of the fully materialized LP in floating point and
// returns the family rows carrying a positive multiplier: the candidate
// active set of the primal optimum. The dual has one row per primal
// variable, so its tableau stays small no matter how many family rows
// exist. Purely a warm start: a poor float solve costs extra exact rounds,
// never correctness.
std::vector<LinearConstraint> dual_presolve(const PmModel& model,
                                            const std::vector<LinearConstraint>& base,
                                            const std::vector<LinearConstraint>& family) {
    const int n = model.instance.message_count();
    const bool symmetric = model.objective == PmObjective::kSymmetricRate;
    const int total = (1 << n) + n + (symmetric ? 1 : 0);

    // Primal columns that occur anywhere, with their objective c >= 0.
    std::vector<int> dual_row(total, -1);
    std::vector<double> primal_obj;
    auto touch = [&](int var) {
        if (dual_row[var] >= 0) return dual_row[var];
        double c = 0.0;
        if (var >= (1 << n)) c = symmetric ? (var == (1 << n) + n ? 1.0 : 0.0) : 1.0;
        dual_row[var] = static_cast<int>(primal_obj.size());
        primal_obj.push_back(c);
        return dual_row[var];
    };
    if (symmetric)
        touch((1 << n) + n);
    else
        for (int i = 0; i < n; ++i) touch((1 << n) + i);
    for (const auto* rows : {&base, &family})
        for (const LinearConstraint& row : *rows)
            for (const auto& [var, coef] : row.terms) touch(var);
    const int cols_p = static_cast<int>(primal_obj.size());

    // Dual: minimize sum b_r y_r + sum u_j w_j subject to, for every primal
    // column j, sum_r a_rj y_r + w_j - s_j = c_j with y (>= rows split into
    // two signs for equalities), w, s >= 0. Starting basis: w_j = c_j.
    FloatSimplex dual;
    struct YVar {
        int row;       // index into base+family (base first)
        int col_pos;   // y+ column
        int col_neg;   // y- column, -1 unless the primal row is an equality
    };
    std::vector<YVar> ys;
    std::vector<std::vector<std::pair<int, double>>> dual_terms(cols_p);
    auto add_primal_row = [&](const LinearConstraint& row, int index) {
        const bool flip = row.relation == Relation::kGreaterEq;
        const double sign = flip ? -1.0 : 1.0;
        const double rhs = sign * row.rhs.get_d();
        YVar y{index, -1, -1};
        y.col_pos = dual.add_variable(FloatSimplex::kInfinity, -rhs);
        if (row.relation == Relation::kEqual)
            y.col_neg = dual.add_variable(FloatSimplex::kInfinity, rhs);
        for (const auto& [var, coef] : row.terms) {
            const double a = sign * coef.get_d();
            dual_terms[dual_row[var]].push_back({y.col_pos, a});
            if (y.col_neg >= 0) dual_terms[dual_row[var]].push_back({y.col_neg, -a});
        }
        ys.push_back(y);
    };
    int index = 0;
    for (const LinearConstraint& row : base) add_primal_row(row, index++);
    for (const LinearConstraint& row : family) add_primal_row(row, index++);

    std::vector<int> w_col(cols_p);
    for (int j = 0; j < cols_p; ++j)
        w_col[j] = dual.add_variable(FloatSimplex::kInfinity, -1.0);  // u_j = 1
    std::vector<int> s_col(cols_p);
    for (int j = 0; j < cols_p; ++j)
        s_col[j] = dual.add_variable(FloatSimplex::kInfinity, 0.0);

    for (int j = 0; j < cols_p; ++j) {
        auto terms = dual_terms[j];
        terms.push_back({w_col[j], 1.0});
        terms.push_back({s_col[j], -1.0});
        // Tiny objective perturbation staggers the degenerate optima.
        dual.add_row(terms, true, primal_obj[j] + 1e-9 * (j + 1), w_col[j]);
    }

    std::vector<double> y = dual.solve();
    std::vector<LinearConstraint> seed;
    for (const YVar& yv : ys) {
        double v = y[yv.col_pos] - (yv.col_neg >= 0 ? y[yv.col_neg] : 0.0);
        if (std::abs(v) < 1e-9) continue;
        const std::size_t idx = static_cast<std::size_t>(yv.row);
        if (idx < base.size()) continue;  // base rows are always present
        seed.push_back(family[idx - base.size()]);
    }
    return seed;
}


}  // namespace

PmSolveResult solve(const PmModel& model) {
    const int n = model.instance.message_count();
    const Layout lay{n};
    const Reduction red(model.instance);
    WorkingLp working(model, lay, red);
    const int seed_rows = working.row_count();
    {
        const std::vector<LinearConstraint> base = base_rows(model, lay, red);
        const std::vector<LinearConstraint> family = enumerate_family_rows(model, lay, red);
        for (const LinearConstraint& row : dual_presolve(model, base, family))
            working.add_row(row);
    }

    PmSolveResult result;
    const bool trace = std::getenv("ICB_LP_TRACE") != nullptr;
    while (true) {
        Solution sol = working.solve_full();
        if (trace)
            std::fprintf(stderr, "round %d: rows=%d pivots=%ld objective=%s\n",
                         result.rounds + 1, working.row_count(), sol.pivots,
                         sol.status == SolveStatus::kOptimal
                             ? to_string(sol.objective).c_str()
                             : "-");
        if (sol.status == SolveStatus::kInfeasible)
            throw std::logic_error("polymatroidal model reported infeasible");
        if (sol.status == SolveStatus::kUnbounded)
            throw std::logic_error("polymatroidal model reported unbounded");
        ++result.rounds;
        std::vector<ViolatedRow> missing = violated_rows(model, lay, red, sol.values);
        if (missing.empty()) {
            result.value = sol.objective;
            result.g.assign(sol.values.begin(), sol.values.begin() + (1 << n));
            result.rates.assign(sol.values.begin() + (1 << n),
                                sol.values.begin() + (1 << n) + n);
            result.generated_rows = working.row_count() - seed_rows;
            return result;
        }
        // Largest violations first; scan order breaks ties, so batches are
        // deterministic.
        std::stable_sort(missing.begin(), missing.end(),
                         [](const ViolatedRow& a, const ViolatedRow& b) {
                             return a.violation > b.violation;
                         });
        const int take = std::min<int>(kRowsPerRound, missing.size());
        for (int i = 0; i < take; ++i) working.add_row(missing[i].row);
    }
}

Rational zy_augmented_bound(const Instance& inst,
                            const std::vector<std::array<Subset, 4>>& instantiations,
                            PmObjective objective) {
    PmModel model = build_pm_model(inst, objective);
    for (const auto& sets : instantiations)
        model.extra.push_back(zy_instantiate(sets, inst));
    return solve(model).value;
}

nlohmann::json export_pm_lp(const PmModel& model) {
    using nlohmann::json;
    const int n = model.instance.message_count();
    const Layout lay{n};
    const bool symmetric = model.objective == PmObjective::kSymmetricRate;

    json vars = json::array();
    auto add_var = [&](const std::string& name, int lower, int upper, int objective) {
        json v;
        v["name"] = name;
        v["lower"] = lower;
        v["upper"] = upper;
        v["objective"] = objective;
        vars.push_back(std::move(v));
    };
    for (Subset s = 0; s < static_cast<Subset>(1) << n; ++s)
        add_var("g" + subset_to_string(s), 0, s == 0 ? 0 : 1, 0);
    for (int i = 0; i < n; ++i)
        add_var("R" + std::to_string(i + 1), 0, 1, symmetric ? 0 : 1);
    if (symmetric) add_var("Rsym", 0, 1, 1);

    json rows = json::array();
    auto add_row = [&](std::vector<std::pair<int, int>> terms, const std::string& rel) {
        json r;
        json ts = json::array();
        for (auto& [var, coef] : terms) {
            json t;
            t["var"] = var;
            t["coef"] = coef;
            ts.push_back(std::move(t));
        }
        r["terms"] = std::move(ts);
        r["relation"] = rel;
        r["rhs"] = 0;
        rows.push_back(std::move(r));
    };
    for (int i = 0; i < n; ++i) {
        const Subset interfering = model.instance.interfering(i);
        Subset b = 0;
        while (true) {
            if (!model.reduced_decoding || b == 0 || b == interfering) {
                std::vector<std::pair<int, int>> terms{{lay.rate(i), 1},
                                                       {lay.g(b | bit(i)), -1}};
                if (b) terms.push_back({lay.g(b), 1});
                add_row(std::move(terms), "=");
            }
            if (b == interfering) break;
            b = (b - interfering) & interfering;
        }
    }
    if (symmetric)
        for (int i = 0; i < n; ++i)
            add_row({{lay.rate(i), 1}, {lay.symmetric_rate(), -1}}, "=");
    for (Subset s = 0; s < static_cast<Subset>(1) << n; ++s)
        for (int i = 0; i < n; ++i) {
            if (contains(s, i)) continue;
            add_row({{lay.g(s), 1}, {lay.g(s | bit(i)), -1}}, "<=");
            for (int j = i + 1; j < n; ++j) {
                if (contains(s, j)) continue;
                add_row({{lay.g(s | bit(i)), 1},
                         {lay.g(s | bit(j)), 1},
                         {lay.g(s | bit(i) | bit(j)), -1},
                         {lay.g(s), -1}},
                        ">=");
            }
        }
    for (const PmInequality& ineq : model.extra) {
        json r;
        json ts = json::array();
        for (const auto& [s, coef] : ineq.g_terms) {
            json t;
            t["var"] = lay.g(s);
            t["coef"] = to_string(coef);
            ts.push_back(std::move(t));
        }
        for (const auto& [i, coef] : ineq.rate_terms) {
            json t;
            t["var"] = lay.rate(i);
            t["coef"] = to_string(coef);
            ts.push_back(std::move(t));
        }
        r["terms"] = std::move(ts);
        r["relation"] = ">=";
        r["rhs"] = 0;
        rows.push_back(std::move(r));
    }

    json out;
    out["sense"] = "maximize";
    out["variables"] = std::move(vars);
    out["constraints"] = std::move(rows);
    return out;
}

}  // namespace icb
