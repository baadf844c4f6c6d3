#include "icb/chain_search.hpp"

#include <algorithm>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace icb {

namespace {

bool terminal_ok(const Instance& inst, int head, int tail) {
    return contains(inst.interfering(tail), head) ||
           contains(inst.interfering(head), tail);
}

// Messages interfered by every member of `req`.
std::vector<int> common_interferers(const Instance& inst, Subset req) {
    std::vector<int> out;
    for (int k = 0; k < inst.message_count(); ++k)
        if (subset_of(req, inst.interfering(k))) out.push_back(k);
    return out;
}

// ---------------------------------------------------------------------------
// Plain alignment chains: shortest path in the pair graph whose edges are
// the pairs {a,b} some receiver k interferes with jointly.

struct PairGraph {
    int n;
    std::vector<Subset> adj;  // adj[a] = {b : some k has {a,b} in B_k}

    explicit PairGraph(const Instance& inst) : n(inst.message_count()), adj(n, 0) {
        for (int k = 0; k < n; ++k) {
            Subset b = inst.interfering(k);
            for (int a : members(b)) adj[a] |= b & ~bit(a);
        }
    }
};

int smallest_linker(const Instance& inst, int a, int b) {
    for (int k = 0; k < inst.message_count(); ++k)
        if (contains(inst.interfering(k), a) && contains(inst.interfering(k), b))
            return k;
    return -1;
}

std::vector<int> bfs_distances(const PairGraph& g, int from) {
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    dist[from] = 0;
    q.push(from);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : members(g.adj[v]))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

}  // namespace

std::optional<std::pair<Chain, int>> min_alignment_chain(const Instance& inst) {
    const int n = inst.message_count();
    PairGraph graph(inst);

    int best = -1, best_u = -1, best_v = -1;
    std::vector<std::vector<int>> dist(n);
    for (int v = 0; v < n; ++v) dist[v] = bfs_distances(graph, v);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!terminal_ok(inst, u, v)) continue;
            int d = dist[u][v];
            if (d < 1) continue;
            if (best < 0 || d < best) {
                best = d;
                best_u = u;
                best_v = v;
            }
        }
    if (best < 0) return std::nullopt;

    // Lexicographically smallest shortest path from best_u to best_v.
    const std::vector<int>& to_goal = dist[best_v];
    Chain chain;
    chain.spine.push_back(best_u);
    int at = best_u;
    while (at != best_v) {
        for (int w : members(graph.adj[at]))
            if (to_goal[w] == to_goal[at] - 1) {
                at = w;
                break;
            }
        chain.spine.push_back(at);
    }
    for (int j = 0; j < best; ++j) {
        int k = smallest_linker(inst, chain.spine[j], chain.spine[j + 1]);
        chain.towers.push_back({j, TowerKind::kBasic, {{k, j, j + 1}}});
    }
    return std::make_pair(std::move(chain), best);
}

std::optional<Chain> chain_from_acyclic_set(const Instance& inst, Subset acyclic) {
    const int s = count(acyclic);
    if (s < 3) return std::nullopt;
    // Reverse topological order of the induced subgraph: every member is
    // interfered by all of its predecessors in the sequence.
    std::vector<int> order;
    Subset remaining = acyclic;
    while (remaining) {
        int pick = -1;
        for (int v : members(remaining))
            if ((inst.side_info(v) & remaining) == 0) {
                pick = v;
                break;
            }
        if (pick < 0) return std::nullopt;  // not acyclic after all
        order.push_back(pick);
        remaining &= ~bit(pick);
    }
    std::reverse(order.begin(), order.end());

    Chain chain;
    chain.spine = {std::min(order[0], order[1]), std::max(order[0], order[1])};
    Tower tower{0, TowerKind::kBasic, {}};
    for (int l = 2; l < s; ++l) tower.floors.push_back({order[l], 0, 1});
    chain.towers.push_back(std::move(tower));
    return chain;
}

// ---------------------------------------------------------------------------
// Weighted chain search. Chains decompose into blocks: a basic tower on one
// edge, or a crossing tower whose total coverage spans q >= 2 edges with
// basic towers on its non-central edges. Blocks are appended left to right;
// within a fixed spine and block layout each tower maximizes its own height
// independently, which maximizes the floor sum and so minimizes the bound.

namespace {

struct Candidate {
    Rational bound;
    Chain chain;

    // Smaller is better: bound, then length, then certificate order.
    bool better_than(const Candidate& other) const {
        if (bound != other.bound) return bound < other.bound;
        if (chain.length() != other.chain.length())
            return chain.length() < other.chain.length();
        return chain_less(chain, other.chain);
    }
};

struct PairEntry {
    std::vector<int> linkers;    // all k with both endpoints in B_k
    std::vector<int> max_tower;  // floors of the tallest basic tower, lex-least
};

class Searcher {
public:
    Searcher(const Instance& inst, bool allow_crossing, const SearchLimits& limits)
        : inst_(inst),
          n_(inst.message_count()),
          allow_crossing_(allow_crossing && limits.max_height >= 2),
          limits_(limits),
          pairs_(static_cast<std::size_t>(n_) * n_) {}

    // Builds the per-pair tower cache; returns the nodes it spent.
    long long precompute() {
        long long nodes = 0;
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b) {
                PairEntry& e = pairs_[a * n_ + b];
                e.linkers = common_interferers(inst_, bit(a) | bit(b));
                if (e.linkers.empty()) continue;
                std::vector<int> current;
                grow_basic(bit(a) | bit(b), current, e.max_tower, nodes);
            }
        return nodes;
    }

    struct RootResult {
        std::optional<Candidate> best;
        bool budget_hit = false;
        long long nodes = 0;
    };

    RootResult run_root(int root, long long budget) {
        RootResult result;
        State st;
        st.spine.push_back(root);
        st.used = bit(root);
        st.budget = budget;
        extend(st, result);
        result.budget_hit = st.budget_exhausted;
        result.nodes = st.nodes;
        return result;
    }

private:
    struct State {
        std::vector<int> spine;
        std::vector<Tower> towers;
        Subset used = 0;
        int sum_heights = 0;
        long long nodes = 0;
        long long budget = 0;
        bool budget_exhausted = false;
    };

    const PairEntry& pair(int a, int b) const {
        return pairs_[std::min(a, b) * n_ + std::max(a, b)];
    }

    bool charge(State& st) {
        if (st.budget_exhausted) return false;
        if (++st.nodes > st.budget) {
            st.budget_exhausted = true;
            return false;
        }
        return true;
    }

    // Tallest stack of floors all interfered by req and everything below;
    // floors tried in ascending message order, so the first tallest stack
    // found is the lexicographically least one.
    void grow_basic(Subset req, std::vector<int>& current, std::vector<int>& best,
                    long long& nodes) const {
        if (current.size() > best.size()) best = current;
        if (static_cast<int>(current.size()) == limits_.max_height) return;
        for (int k = 0; k < n_; ++k) {
            if (!subset_of(req, inst_.interfering(k))) continue;
            ++nodes;
            current.push_back(k);
            grow_basic(req | bit(k), current, best, nodes);
            current.pop_back();
        }
    }

    void offer(const State& st, RootResult& result) const {
        if (st.spine.front() >= st.spine.back()) return;
        if (!terminal_ok(inst_, st.spine.front(), st.spine.back())) return;
        const int m = static_cast<int>(st.towers.size());
        Rational bound(m, 1 + m + st.sum_heights);
        bound.canonicalize();
        if (result.best && bound > result.best->bound) return;
        Candidate cand{std::move(bound), Chain{st.spine, st.towers}};
        if (!result.best || cand.better_than(*result.best))
            result.best = std::move(cand);
    }

    void extend(State& st, RootResult& result) {
        if (!charge(st)) return;
        const int m = static_cast<int>(st.towers.size());
        if (m >= 1) offer(st, result);
        if (m >= limits_.max_length) return;

        // Basic block: one new edge.
        for (int v = 0; v < n_; ++v) {
            if (contains(st.used, v)) continue;
            const PairEntry& e = pair(st.spine.back(), v);
            if (e.max_tower.empty()) continue;
            Tower tower{m, TowerKind::kBasic, {}};
            for (int k : e.max_tower) tower.floors.push_back({k, m, m + 1});
            const int h = tower.height();
            st.spine.push_back(v);
            st.used |= bit(v);
            st.towers.push_back(std::move(tower));
            st.sum_heights += h;
            extend(st, result);
            st.sum_heights -= h;
            st.towers.pop_back();
            st.used &= ~bit(v);
            st.spine.pop_back();
        }

        // Crossing block: q new edges covered by one crossing tower whose
        // central edge sits at offset c inside the block.
        if (allow_crossing_)
            for (int q = 2; q <= limits_.max_length - m; ++q)
                for (int c = 0; c < q; ++c) pick_block_vertex(st, result, q, c, 1);
    }

    // Chooses the idx-th new spine vertex of a crossing block of span q with
    // central offset c.
    void pick_block_vertex(State& st, RootResult& result, int q, int c, int idx) {
        if (!charge(st)) return;
        for (int v = 0; v < n_; ++v) {
            if (contains(st.used, v)) continue;
            const PairEntry& e = pair(st.spine.back(), v);
            const bool central = (idx - 1 == c);
            if (central ? e.linkers.empty() : e.max_tower.empty()) continue;
            st.spine.push_back(v);
            st.used |= bit(v);
            if (idx < q)
                pick_block_vertex(st, result, q, c, idx + 1);
            else
                finish_block(st, result, q, c);
            st.used &= ~bit(v);
            st.spine.pop_back();
        }
    }

    // All q vertices of the block are chosen; enumerate the central core and
    // recurse with the block's towers in place.
    void finish_block(State& st, RootResult& result, int q, int c) {
        const int last = static_cast<int>(st.spine.size()) - 1;
        const int first_edge = last - q;
        const int central = first_edge + c;
        std::vector<Floor> core;
        {
            std::vector<Floor> current;
            grow_core(st, first_edge, last, central, 0, current, core);
        }
        if (core.size() < 2) return;

        int added_heights = 0;
        for (int e = first_edge; e < first_edge + q; ++e) {
            Tower tower{e, e == central ? TowerKind::kCrossing : TowerKind::kBasic, {}};
            if (e == central) {
                tower.floors = core;
            } else {
                for (int k : pair(st.spine[e], st.spine[e + 1]).max_tower)
                    tower.floors.push_back({k, e, e + 1});
            }
            added_heights += tower.height();
            st.towers.push_back(std::move(tower));
        }
        st.sum_heights += added_heights;
        extend(st, result);
        st.sum_heights -= added_heights;
        st.towers.resize(st.towers.size() - q);
    }

    // Tallest core ladder covering spine positions [lo, hi] exactly at the
    // top; the first floor covers only the central edge and every later
    // floor widens monotonically. Floors are explored in ascending
    // (message, start, end) order so the first tallest ladder found is the
    // certificate-least one.
    void grow_core(State& st, int lo, int hi, int central, Subset placed,
                   std::vector<Floor>& current, std::vector<Floor>& best) {
        if (!charge(st)) return;
        if (!current.empty() && current.back().cover_start == lo &&
            current.back().cover_end == hi && current.size() >= 2 &&
            current.size() > best.size())
            best = current;
        if (static_cast<int>(current.size()) == limits_.max_height) return;
        const int prev_s = current.empty() ? central : current.back().cover_start;
        const int prev_t = current.empty() ? central + 1 : current.back().cover_end;
        for (int k = 0; k < n_; ++k) {
            if (!subset_of(placed, inst_.interfering(k))) continue;
            if (current.empty()) {
                if (!contains(inst_.interfering(k), st.spine[central]) ||
                    !contains(inst_.interfering(k), st.spine[central + 1]))
                    continue;
                current.push_back({k, central, central + 1});
                grow_core(st, lo, hi, central, placed | bit(k), current, best);
                current.pop_back();
                continue;
            }
            for (int s = lo; s <= prev_s; ++s) {
                if (!contains(inst_.interfering(k), st.spine[s])) continue;
                for (int t = prev_t; t <= hi; ++t) {
                    if (!contains(inst_.interfering(k), st.spine[t])) continue;
                    current.push_back({k, s, t});
                    grow_core(st, lo, hi, central, placed | bit(k), current, best);
                    current.pop_back();
                }
            }
        }
    }

    const Instance& inst_;
    int n_;
    bool allow_crossing_;
    SearchLimits limits_;
    std::vector<PairEntry> pairs_;
};

}  // namespace

BoundReport search_chains(const Instance& inst, SearchMode mode,
                          const SearchLimits& limits) {
    if (limits.max_length < 1 || limits.max_height < 1 || limits.node_budget < 1)
        throw std::invalid_argument("search limits must be positive");
    BoundReport report;

    if (mode == SearchMode::kPlain) {
        auto found = min_alignment_chain(inst);
        if (found) {
            report.bound = internal_conflict_bound(found->second);
            report.witness = std::move(found->first);
        }
        return report;
    }

    const int n = inst.message_count();
    Searcher searcher(inst, mode == SearchMode::kDisjoint, limits);
    long long spent = searcher.precompute();
    report.nodes_expanded = spent;

    std::optional<Candidate> best;
    auto consider = [&](std::optional<Candidate> cand) {
        if (cand && (!best || cand->better_than(*best))) best = std::move(cand);
    };

    // Seeds: the minimum plain chain and the one-edge chain grown from the
    // maximum acyclic set, whenever the limits can hold them. They keep the
    // reported bound at least as good as the closed-form bounds.
    if (auto plain = min_alignment_chain(inst);
        plain && plain->second <= limits.max_length) {
        consider(Candidate{internal_conflict_bound(plain->second),
                           std::move(plain->first)});
    }
    MaisResult mr = mais(inst);
    if (mr.size >= 3 && mr.size - 2 <= limits.max_height) {
        if (auto seed = chain_from_acyclic_set(inst, mr.witness))
            consider(Candidate{mr.bound(), std::move(*seed)});
    }

    const long long remaining = std::max<long long>(limits.node_budget - spent, 0);
    const long long per_root = std::max<long long>(remaining / std::max(n, 1), 1);

    std::vector<Searcher::RootResult> roots(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (int v = 0; v < n; ++v) roots[v] = searcher.run_root(v, per_root);

    for (const auto& r : roots) {
        consider(r.best);
        report.nodes_expanded += r.nodes;
        if (r.budget_hit) report.exhaustive = false;
    }
    if (best) {
        report.bound = std::move(best->bound);
        report.witness = std::move(best->chain);
    }
    return report;
}

}  // namespace icb
