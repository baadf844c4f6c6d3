#pragma once

#include <optional>
#include <utility>

#include "icb/chain.hpp"
#include "icb/instance.hpp"
#include "icb/mais.hpp"
#include "icb/rational.hpp"

namespace icb {

struct SearchLimits {
    int max_length = 4;                  // largest spine edge count m
    int max_height = 2;                  // largest tower height
    long long node_budget = 10'000'000;  // expanded nodes before giving up
};

// Outcome of a chain search. `bound` is empty when no chain was found
// within the limits; `exhaustive` is false when the node budget ran out
// before the limited space was fully explored.
struct BoundReport {
    std::optional<Rational> bound;
    std::optional<Chain> witness;
    bool exhaustive = true;
    long long nodes_expanded = 0;
};

enum class SearchMode { kPlain, kSingleton, kDisjoint };

// Shortest plain alignment chain (every tower basic with height 1) and its
// length, or empty when the problem is not internally conflicted. Exact
// breadth-first search; deterministic.
std::optional<std::pair<Chain, int>> min_alignment_chain(const Instance& inst);

// Best (smallest) chain bound over the limited search space. The singleton
// mode explores all-basic chains; the disjoint mode additionally places
// crossing towers. Results are identical regardless of thread count: ties
// break by bound, then spine length, then certificate order, and each root
// branch owns a fixed slice of the node budget.
BoundReport search_chains(const Instance& inst, SearchMode mode,
                          const SearchLimits& limits);

inline BoundReport search_singleton(const Instance& inst, const SearchLimits& limits) {
    return search_chains(inst, SearchMode::kSingleton, limits);
}
inline BoundReport search_disjoint(const Instance& inst, const SearchLimits& limits) {
    return search_chains(inst, SearchMode::kDisjoint, limits);
}

// The one-edge chain built from an acyclic set of size >= 3, ordered so the
// first two members ground the tower and the rest stack as floors; its
// bound is 1/|set|. Used to seed searches. Empty when |set| < 3.
std::optional<Chain> chain_from_acyclic_set(const Instance& inst, Subset acyclic);

}  // namespace icb
