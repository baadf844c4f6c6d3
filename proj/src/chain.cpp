#include "icb/chain.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace icb {

int Chain::floor_count() const {
    int total = 0;
    for (const Tower& t : towers) total += t.height();
    return total;
}

bool Chain::all_basic() const {
    return std::all_of(towers.begin(), towers.end(), [](const Tower& t) {
        return t.kind == TowerKind::kBasic;
    });
}

std::vector<int> Chain::crossing_edges() const {
    std::vector<int> out;
    for (const Tower& t : towers)
        if (t.kind == TowerKind::kCrossing) out.push_back(t.edge);
    return out;
}

std::pair<int, int> Chain::coverage(int j) const {
    const Floor& top = towers[j].floors.back();
    return {top.cover_start, top.cover_end - 1};
}

namespace {

std::string msg(int internal_index) { return std::to_string(internal_index + 1); }

void check_member(const Instance& inst, int member, int receiver,
                  const std::string& where, VerifyResult& result) {
    if (!contains(inst.interfering(receiver), member)) {
        result.ok = false;
        result.violations.push_back(where + ": message " + msg(member) +
                                    " not interfering at receiver " + msg(receiver));
    }
}

void check_tower_structure(const Instance& inst, const std::vector<int>& spine,
                           const Tower& tower) {
    const int m = static_cast<int>(spine.size()) - 1;
    if (tower.edge < 0 || tower.edge >= m)
        throw std::invalid_argument("tower edge out of range");
    if (tower.floors.empty())
        throw std::invalid_argument("tower without floors");
    for (const Floor& f : tower.floors) {
        if (f.message < 0 || f.message >= inst.message_count())
            throw std::invalid_argument("floor message out of range");
        if (f.cover_start < 0 || f.cover_end > m || f.cover_start >= f.cover_end)
            throw std::invalid_argument("floor coverage out of range");
    }
}

// Ladder shape for one tower, in global spine coordinates. Anchoring and
// monotonicity failures are definition violations, not malformed input.
void check_ladder(const Tower& tower, VerifyResult& result) {
    const int j = tower.edge;
    const std::string where = "tower at edge " + std::to_string(j + 1);
    const Floor& bottom = tower.floors.front();
    if (bottom.cover_start != j || bottom.cover_end != j + 1) {
        result.ok = false;
        result.violations.push_back(where + ": first floor must cover exactly its own edge");
    }
    for (std::size_t l = 1; l < tower.floors.size(); ++l) {
        const Floor& lo = tower.floors[l - 1];
        const Floor& hi = tower.floors[l];
        if (hi.cover_start > lo.cover_start || hi.cover_end < lo.cover_end) {
            result.ok = false;
            result.violations.push_back(where + ": floor " + std::to_string(l + 1) +
                                        " narrows the coverage below it");
        }
    }
    const Floor& top = tower.floors.back();
    if (tower.kind == TowerKind::kBasic) {
        for (std::size_t l = 0; l < tower.floors.size(); ++l) {
            const Floor& f = tower.floors[l];
            if (f.cover_start != j || f.cover_end != j + 1) {
                result.ok = false;
                result.violations.push_back(where + ": basic floor " + std::to_string(l + 1) +
                                            " must cover exactly its own edge");
            }
        }
    } else if (top.cover_end - top.cover_start < 2) {
        result.ok = false;
        result.violations.push_back(where + ": coverage not strictly wider than the "
                                            "central edge, tower is not crossing");
    }
}

// Memberships for one tower. For basic towers both grounds join every
// floor's requirement; for crossing towers each floor requires only its own
// coverage endpoints plus the floors below it.
void check_tower_members(const Instance& inst, const std::vector<int>& spine,
                         const Tower& tower, VerifyResult& result) {
    const std::string where = "tower at edge " + std::to_string(tower.edge + 1);
    std::vector<int> below;
    for (std::size_t l = 0; l < tower.floors.size(); ++l) {
        const Floor& f = tower.floors[l];
        const std::string at = where + ", floor " + std::to_string(l + 1);
        for (int k : below) check_member(inst, k, f.message, at, result);
        check_member(inst, spine[f.cover_start], f.message, at, result);
        check_member(inst, spine[f.cover_end], f.message, at, result);
        below.push_back(f.message);
    }
}

}  // namespace

VerifyResult verify_basic_tower(const Instance& inst, const std::vector<int>& spine,
                                const Tower& tower) {
    if (spine.size() < 2) throw std::invalid_argument("spine needs at least two messages");
    for (int v : spine)
        if (v < 0 || v >= inst.message_count())
            throw std::invalid_argument("spine message out of range");
    if (tower.kind != TowerKind::kBasic)
        throw std::invalid_argument("verify_basic_tower expects a basic tower");
    check_tower_structure(inst, spine, tower);
    VerifyResult result;
    check_ladder(tower, result);
    check_tower_members(inst, spine, tower, result);
    return result;
}

VerifyResult verify_chain(const Instance& inst, const Chain& chain) {
    const int m = chain.length();
    if (m < 1) throw std::invalid_argument("chain needs at least one edge");
    for (int v : chain.spine)
        if (v < 0 || v >= inst.message_count())
            throw std::invalid_argument("spine message out of range");
    if (static_cast<int>(chain.towers.size()) != m)
        throw std::invalid_argument("chain needs exactly one tower per edge");
    for (int j = 0; j < m; ++j) {
        if (chain.towers[j].edge != j)
            throw std::invalid_argument("towers must be listed in edge order");
        check_tower_structure(inst, chain.spine, chain.towers[j]);
    }

    VerifyResult result;

    std::set<int> spine_seen;
    for (int v : chain.spine)
        if (!spine_seen.insert(v).second) {
            result.ok = false;
            result.violations.push_back("spine message " + msg(v) + " repeats");
        }

    const int head = chain.spine.front(), tail = chain.spine.back();
    if (!contains(inst.interfering(tail), head) &&
        !contains(inst.interfering(head), tail)) {
        result.ok = false;
        result.violations.push_back("terminal condition fails: neither end of the spine "
                                    "interferes at the other (" + msg(head) + ", " +
                                    msg(tail) + ")");
    }

    for (const Tower& tower : chain.towers) {
        check_ladder(tower, result);
        check_tower_members(inst, chain.spine, tower, result);
        for (const Floor& f : tower.floors)
            if (spine_seen.count(f.message))
                result.warnings.push_back("floor message " + msg(f.message) +
                                          " in tower at edge " + std::to_string(tower.edge + 1) +
                                          " is also a spine message");
    }

    // Crossing coverages must tile disjointly, and only basic towers may sit
    // on the covered edges.
    std::vector<std::pair<int, int>> spans;
    for (int j : chain.crossing_edges()) spans.push_back(chain.coverage(j));
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i)
        if (spans[i].first <= spans[i - 1].second) {
            result.ok = false;
            result.violations.push_back("total coverages of crossing towers overlap on edge " +
                                        std::to_string(spans[i].first + 1));
        }
    for (int j : chain.crossing_edges()) {
        auto [lo, hi] = chain.coverage(j);
        for (int e = lo; e <= hi; ++e)
            if (e != j && chain.towers[e].kind != TowerKind::kBasic) {
                result.ok = false;
                result.violations.push_back("edge " + std::to_string(e + 1) +
                                            " inside a crossing coverage must carry a basic tower");
            }
    }
    return result;
}

Rational cic_bound_unchecked(const Chain& chain) {
    Rational r(chain.length(), 1 + chain.length() + chain.floor_count());
    r.canonicalize();
    return r;
}

Rational cic_bound(const Instance& inst, const Chain& chain) {
    VerifyResult v = verify_chain(inst, chain);
    if (!v.ok) {
        std::ostringstream os;
        os << "chain does not verify:";
        for (const std::string& s : v.violations) os << "\n  " << s;
        throw std::invalid_argument(os.str());
    }
    return cic_bound_unchecked(chain);
}

Rational internal_conflict_bound(int delta) {
    if (delta < 1) throw std::invalid_argument("alignment chain length must be >= 1");
    Rational r(delta, 1 + 2 * delta);
    r.canonicalize();
    return r;
}

bool chain_less(const Chain& a, const Chain& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.spine != b.spine) return a.spine < b.spine;
    auto key = [](const Tower& t) {
        return std::make_pair(t.kind == TowerKind::kCrossing, t.floors);
    };
    for (int j = 0; j < a.length(); ++j) {
        auto ka = key(a.towers[j]), kb = key(b.towers[j]);
        if (ka != kb) return ka < kb;
    }
    return false;
}

}  // namespace icb
