#pragma once

#include "icb/instance.hpp"
#include "icb/rational.hpp"

namespace icb {

struct MaisResult {
    int size = 1;
    Subset witness = 0;  // acyclic set of maximum size, smallest mask value
    Rational bound() const { return Rational(1, size); }
};

// Maximum acyclic induced subgraph. Exhaustive enumeration for small n,
// branch and bound in degeneracy order above that; both give the same
// (size, witness) pair. Deterministic regardless of thread count.
MaisResult mais(const Instance& inst);

// Serial reference: scans all 2^n subsets in increasing mask order.
// Also the implementation behind mais() for n <= 20.
MaisResult mais_exhaustive(const Instance& inst);

// Branch and bound entry, exposed so tests can cross-check it against the
// exhaustive scan on small instances.
MaisResult mais_branch_bound(const Instance& inst);

}  // namespace icb
