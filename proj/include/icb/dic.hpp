#pragma once

#include <vector>

#include "icb/capacity.hpp"
#include "icb/chain.hpp"
#include "icb/instance.hpp"

namespace icb {

// One aggregated server sum: the total capacity of servers intersecting
// both t_a and t_b.
struct ServerSum {
    Subset t_a = 0;
    Subset t_b = 0;
    Rational value;
};

// Sum of C_J over all nonempty J intersecting both subsets, by
// inclusion-exclusion over the default plus override corrections; never
// enumerates the 2^n - 1 servers. Zero when either subset is empty.
Rational capacity_sum(const CapacityMap& cap, Subset t_a, Subset t_b);

// Serial reference: enumerates every server. Requires n <= 24.
Rational capacity_sum_enumerate(const CapacityMap& cap, Subset t_a, Subset t_b);

// Multi-server bound for an all-basic (singleton) chain. Throws
// std::invalid_argument if the chain has a crossing tower or fails
// verification. Appends one ServerSum per edge to `terms` when given.
Rational dic_bound_singleton(const Instance& inst, const CapacityMap& cap,
                             const Chain& chain,
                             std::vector<ServerSum>* terms = nullptr);

// Multi-server bound for a general disjoint weighted chain; reduces to the
// singleton bound when no tower crosses.
Rational dic_bound_disjoint(const Instance& inst, const CapacityMap& cap,
                            const Chain& chain,
                            std::vector<ServerSum>* terms = nullptr);

}  // namespace icb
