#pragma once

#include <optional>
#include <string>
#include <vector>

#include "icb/instance.hpp"
#include "icb/rational.hpp"

namespace icb {

// One floor of a tower: message `message` covering spine positions
// [cover_start, cover_end]. Positions are 0-based indices into the chain's
// spine (0..m); a basic tower's floors all cover exactly their own edge,
// i.e. (edge, edge + 1). Coverage is stored in global spine coordinates.
struct Floor {
    int message = 0;
    int cover_start = 0;
    int cover_end = 0;

    bool operator==(const Floor&) const = default;
    auto operator<=>(const Floor&) const = default;
};

enum class TowerKind { kBasic, kCrossing };

// The stack of floors sitting on spine edge `edge` (0-based, edge j joins
// spine positions j and j+1). A crossing tower's floors widen monotonically
// from (edge, edge+1) at the bottom to the tower's total coverage on top.
struct Tower {
    int edge = 0;
    TowerKind kind = TowerKind::kBasic;
    std::vector<Floor> floors;  // bottom to top, at least one

    int height() const { return static_cast<int>(floors.size()); }

    bool operator==(const Tower&) const = default;
};

// A disjoint weighted alignment chain: spine messages i(0..m) plus one
// tower per edge. Singleton chains are the all-basic special case; plain
// alignment chains additionally have every height equal to 1.
struct Chain {
    std::vector<int> spine;     // pairwise distinct messages, length m+1
    std::vector<Tower> towers;  // towers[j].edge == j, size m

    int length() const { return static_cast<int>(spine.size()) - 1; }
    int floor_count() const;                 // sum of tower heights
    bool all_basic() const;                  // M empty
    std::vector<int> crossing_edges() const; // M, in increasing order

    // Total coverage [first_edge, last_edge] of towers[j] as edge indices;
    // for a basic tower this is [j, j].
    std::pair<int, int> coverage(int j) const;

    bool operator==(const Chain&) const = default;
};

// Outcome of checking a certificate against the definitions. `violations`
// lists every failed condition, not just the first; `warnings` flags
// permitted oddities (a floor message reused as a spine message).
struct VerifyResult {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
};

// Checks a single basic tower against its spine: every floor message must
// be interfered by both grounds and all lower floors.
VerifyResult verify_basic_tower(const Instance& inst,
                                const std::vector<int>& spine,
                                const Tower& tower);

// Full certificate check: terminal condition, every basic tower, every
// crossing tower's ladder (anchoring, monotone nesting, memberships), and
// disjointness of crossing coverages. Throws std::invalid_argument for
// structurally malformed input (bad sizes or out-of-range indices).
VerifyResult verify_chain(const Instance& inst, const Chain& chain);

// m / (1 + m + sum of heights), exact. Throws std::invalid_argument when
// the chain does not verify, with the violations in the message.
Rational cic_bound(const Instance& inst, const Chain& chain);

// Same value, no verification; for callers that hold a verified chain.
Rational cic_bound_unchecked(const Chain& chain);

// delta / (1 + 2*delta) for a minimum alignment-chain length delta >= 1.
Rational internal_conflict_bound(int delta);

// Deterministic total order on chains used for tie-breaking search results:
// by length, then spine, then tower contents.
bool chain_less(const Chain& a, const Chain& b);

}  // namespace icb
