#include "icb/mais.hpp"

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace icb {

namespace {

// Deterministic greedy lower bound: grow an acyclic set in index order.
int greedy_acyclic_size(const Instance& inst) {
    Subset chosen = 0;
    for (int v = 0; v < inst.message_count(); ++v)
        if (inst.is_acyclic(chosen | bit(v))) chosen |= bit(v);
    return count(chosen);
}

struct Best {
    int size = 0;
    Subset witness = 0;
    bool has_witness = false;

    // Order: larger size wins, then smaller mask.
    void offer(int size_, Subset mask) {
        if (size_ > size || (size_ == size && (!has_witness || mask < witness))) {
            size = size_;
            witness = mask;
            has_witness = true;
        }
    }
};

Best scan_range(const Instance& inst, Subset lo, Subset hi, int seed_size) {
    Best best;
    best.size = seed_size;
    for (Subset mask = lo; mask < hi; ++mask) {
        if (count(mask) <= best.size && best.has_witness) continue;
        if (count(mask) < best.size) continue;
        if (inst.is_acyclic(mask)) best.offer(count(mask), mask);
    }
    return best;
}

// Remove-min-degree elimination order on the underlying undirected
// side-information graph; branching follows its reverse.
std::vector<int> degeneracy_order(const Instance& inst) {
    const int n = inst.message_count();
    std::vector<Subset> adj(n);
    for (int j = 0; j < n; ++j) {
        Subset a = inst.side_info(j);
        adj[j] |= a;
        for (int i : members(a)) adj[i] |= bit(j);
    }
    std::vector<int> order;
    Subset remaining = full_set(n);
    while (remaining) {
        int pick = -1, pick_deg = kMaxMessages + 1;
        for (int v : members(remaining)) {
            int deg = count(adj[v] & remaining);
            if (deg < pick_deg) {
                pick = v;
                pick_deg = deg;
            }
        }
        order.push_back(pick);
        remaining &= ~bit(pick);
    }
    return order;
}

// True iff some acyclic set S with forced <= S <= forced|candidates reaches
// |S| >= target. Used both for the size search (target = best + 1) and for
// the lexicographic witness tightening.
bool exists_acyclic_of_size(const Instance& inst, Subset chosen,
                            const std::vector<int>& order, std::size_t next,
                            int target, Subset allowed) {
    int have = count(chosen);
    if (have >= target) return true;
    // Count the still-available vertices.
    Subset avail = 0;
    for (std::size_t p = next; p < order.size(); ++p)
        if (contains(allowed, order[p])) avail |= bit(order[p]);
    if (have + count(avail) < target) return false;
    for (std::size_t p = next; p < order.size(); ++p) {
        int v = order[p];
        if (!contains(allowed, v)) continue;
        if (inst.is_acyclic(chosen | bit(v)) &&
            exists_acyclic_of_size(inst, chosen | bit(v), order, p + 1, target, allowed))
            return true;
        // Excluding v: the remaining pool shrinks by one.
        avail &= ~bit(v);
        if (have + count(avail) < target) return false;
    }
    return false;
}

}  // namespace

MaisResult mais_exhaustive(const Instance& inst) {
    const int n = inst.message_count();
    const int seed = greedy_acyclic_size(inst) - 1;
    const Subset end = full_set(n) + 1;

    Best best;
#ifdef _OPENMP
    if (n >= 14) {
        const int chunks = std::max(1, omp_get_max_threads() * 4);
        const Subset step = (end + chunks - 1) / chunks;
        std::vector<Best> partial(chunks);
#pragma omp parallel for schedule(dynamic, 1)
        for (int c = 0; c < chunks; ++c) {
            Subset lo = step * c;
            Subset hi = std::min<Subset>(lo + step, end);
            if (lo < hi) partial[c] = scan_range(inst, std::max<Subset>(lo, 1), hi, seed);
        }
        best.size = seed;
        for (const Best& b : partial)
            if (b.has_witness) best.offer(b.size, b.witness);
    } else
#endif
    {
        best = scan_range(inst, 1, end, seed);
    }
    if (!best.has_witness) {
        // Only possible if the greedy seed already was the maximum and the
        // scan skipped everything at it; rescan with a lowered threshold.
        best = scan_range(inst, 1, end, 0);
    }
    return {best.size, best.witness};
}

MaisResult mais_branch_bound(const Instance& inst) {
    const int n = inst.message_count();
    const std::vector<int> order = degeneracy_order(inst);
    const Subset all = inst.all_messages();

    int best = greedy_acyclic_size(inst);
    while (best < n &&
           exists_acyclic_of_size(inst, 0, order, 0, best + 1, all))
        ++best;

    // Lexicographic witness: clear bits of the mask from the top whenever a
    // maximum acyclic set still exists without them.
    Subset allowed = all;
    for (int b = n - 1; b >= 0; --b) {
        Subset trial = allowed & ~bit(b);
        if (exists_acyclic_of_size(inst, 0, order, 0, best, trial)) allowed = trial;
    }
    // allowed now has exactly the bits of the smallest witness: if a vertex
    // could be dropped while keeping size, the loop dropped it.
    return {best, allowed};
}

MaisResult mais(const Instance& inst) {
    return inst.message_count() <= 20 ? mais_exhaustive(inst)
                                      : mais_branch_bound(inst);
}

}  // namespace icb
