#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace icb {

// Message subsets are bitmasks over 0-based message indices. All public
// text/JSON interfaces use 1-based indices; conversion happens at the
// parse/render boundary only.
using Subset = std::uint64_t;

constexpr int kMaxMessages = 64;

constexpr Subset bit(int i) { return Subset{1} << i; }

constexpr bool contains(Subset s, int i) { return (s >> i) & 1; }

constexpr bool subset_of(Subset a, Subset b) { return (a & ~b) == 0; }

constexpr int count(Subset s) { return std::popcount(s); }

// All of [n] as a mask. n == 64 needs the shift guard.
constexpr Subset full_set(int n) {
    return n >= kMaxMessages ? ~Subset{0} : (Subset{1} << n) - 1;
}

inline int lowest(Subset s) { return std::countr_zero(s); }

// Members in increasing index order.
std::vector<int> members(Subset s);

// 0-based mask -> sorted 1-based index list (for JSON/text output).
std::vector<int> to_external(Subset s);

// "{1,3,5}" style rendering with 1-based indices; "{}" for the empty set.
std::string subset_to_string(Subset s);

}  // namespace icb
