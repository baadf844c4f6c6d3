#pragma once

#include <json.hpp>

#include <array>
#include <vector>

#include "icb/instance.hpp"
#include "icb/lp.hpp"
#include "icb/rational.hpp"

namespace icb {

enum class PmObjective { kSumRate, kSymmetricRate };

// Term of an inequality over the polymatroidal model: rational coefficients
// on g(S) variables and on rates.
struct PmInequality {
    std::vector<std::pair<Subset, Rational>> g_terms;  // sorted by subset
    std::vector<std::pair<int, Rational>> rate_terms;  // 0-based message, sorted
    // Meaning: sum of terms >= 0.
};

// The polymatroidal model over one instance: a normalized entropy-like set
// function g with monotonicity, submodularity and capacity constraints,
// tied to the rates by the decoding identity R_i + g(B) = g(B u {i}) for
// every B inside the interfering set of i.
struct PmModel {
    Instance instance;
    PmObjective objective = PmObjective::kSumRate;
    bool reduced_decoding = false;  // only B = empty and B = B_i
    std::vector<PmInequality> extra;

    int g_variable_count() const { return 1 << instance.message_count(); }
    int rate_variable_count() const { return instance.message_count(); }
    long long monotonicity_count() const;
    long long submodularity_count() const;
    long long capacity_count() const;
    long long decoding_count() const;
};

struct PmSolveResult {
    Rational value;
    std::vector<Rational> g;      // indexed by subset mask
    std::vector<Rational> rates;  // 0-based message index
    int generated_rows = 0;       // lazily added monotonicity/submodularity rows
    int rounds = 0;
};

// Builds the model; refuses instances with more than 12 messages (the
// variable count doubles per message).
PmModel build_pm_model(const Instance& inst, PmObjective objective,
                       bool reduced_decoding = false);

// Exact optimum of the model. Monotonicity and submodularity rows are
// generated lazily: solve, add every family row the solution violates,
// repeat; the final point satisfies the whole family, so its value is the
// optimum of the full LP. Throws std::logic_error if the model turns out
// infeasible or unbounded (both indicate a model bug).
PmSolveResult solve(const PmModel& model);

// The Zhang-Yeung inequality instantiated at four entropic variables, each
// of the form {Y} u X_{S^c} named by its "missing" message set S. Returns
// the g/R-form obtained by expanding each joint entropy term H over a
// union of such variables into rates plus g at the intersection of the
// missing sets.
PmInequality zy_instantiate(const std::array<Subset, 4>& missing_sets,
                            const Instance& inst);

// Optimum of the model augmented with the instantiated inequalities.
Rational zy_augmented_bound(const Instance& inst,
                            const std::vector<std::array<Subset, 4>>& instantiations,
                            PmObjective objective);

// The fully materialized LP (every family row spelled out) in a
// self-describing JSON, for checking with external solvers.
nlohmann::json export_pm_lp(const PmModel& model);

}  // namespace icb
