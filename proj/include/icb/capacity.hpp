#pragma once

#include <utility>
#include <vector>

#include "icb/rational.hpp"
#include "icb/subset.hpp"

namespace icb {

// Link capacities over the 2^n - 1 servers (one per nonempty message
// subset): a default value plus sparse overrides, so sums over server
// families never enumerate all servers. Immutable after construction.
class CapacityMap {
public:
    // Overrides must name nonempty, pairwise distinct subsets of [n];
    // capacities must be >= 0. Throws std::invalid_argument otherwise.
    CapacityMap(int n, Rational default_value,
                std::vector<std::pair<Subset, Rational>> overrides = {});

    // The centralized special case: C_[n] = 1 and every other server 0.
    static CapacityMap centralized(int n);

    int message_count() const { return n_; }
    Rational default_value() const { return default_; }
    const std::vector<std::pair<Subset, Rational>>& overrides() const {
        return overrides_;
    }

    // Capacity of one server (servers is a nonempty subset of [n]).
    Rational capacity(Subset servers) const;

    // Sum of all 2^n - 1 capacities.
    Rational total_capacity() const;

private:
    int n_;
    Rational default_;
    std::vector<std::pair<Subset, Rational>> overrides_;  // sorted by mask
};

}  // namespace icb
