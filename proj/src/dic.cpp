#include "icb/dic.hpp"

#include <sstream>
#include <stdexcept>

namespace icb {

namespace {

bool qualifies(Subset servers, Subset t_a, Subset t_b) {
    return (servers & t_a) && (servers & t_b);
}

void require_verified(const Instance& inst, const Chain& chain) {
    VerifyResult v = verify_chain(inst, chain);
    if (v.ok) return;
    std::ostringstream os;
    os << "chain does not verify:";
    for (const std::string& s : v.violations) os << "\n  " << s;
    throw std::invalid_argument(os.str());
}

Subset tower_messages(const Tower& t) {
    Subset s = 0;
    for (const Floor& f : t.floors) s |= bit(f.message);
    return s;
}

Rational add_term(const CapacityMap& cap, Subset t_a, Subset t_b,
                  std::vector<ServerSum>* terms) {
    Rational v = capacity_sum(cap, t_a, t_b);
    if (terms) terms->push_back({t_a, t_b, v});
    return v;
}

}  // namespace

Rational capacity_sum(const CapacityMap& cap, Subset t_a, Subset t_b) {
    if (!t_a || !t_b) return Rational(0);
    const int n = cap.message_count();
    // Nonempty J with J & t_a and J & t_b, counted by inclusion-exclusion
    // over the sets that miss t_a, miss t_b, or miss both.
    auto missing = [n](Subset t) { return (mpz_class(1) << (n - count(t))) - 1; };
    mpz_class qualifying = (mpz_class(1) << n) - 1;
    qualifying -= missing(t_a);
    qualifying -= missing(t_b);
    qualifying += missing(t_a | t_b);
    Rational total = cap.default_value() * Rational(qualifying);
    for (const auto& [servers, value] : cap.overrides())
        if (qualifies(servers, t_a, t_b)) total += value - cap.default_value();
    return total;
}

Rational capacity_sum_enumerate(const CapacityMap& cap, Subset t_a, Subset t_b) {
    const int n = cap.message_count();
    if (n > 24) throw std::invalid_argument("server enumeration limited to n <= 24");
    Rational total(0);
    for (Subset servers = 1; servers <= full_set(n); ++servers)
        if (qualifies(servers, t_a, t_b)) total += cap.capacity(servers);
    return total;
}

Rational dic_bound_singleton(const Instance& inst, const CapacityMap& cap,
                             const Chain& chain, std::vector<ServerSum>* terms) {
    require_verified(inst, chain);
    if (!chain.all_basic())
        throw std::invalid_argument(
            "chain has a crossing tower; use dic_bound_disjoint");
    const int m = chain.length();
    const int tail = chain.spine.back();
    Rational total(0);
    for (int j = 0; j < m; ++j) {
        Subset floors = tower_messages(chain.towers[j]);
        Subset t_a = floors | bit(chain.spine[j]) | bit(chain.spine[j + 1]);
        Subset t_b = floors | bit(chain.spine[j]) | bit(tail);
        total += add_term(cap, t_a, t_b, terms);
    }
    Rational scale(1, m + 1 + chain.floor_count());
    scale.canonicalize();
    return total * scale;
}

Rational dic_bound_disjoint(const Instance& inst, const CapacityMap& cap,
                            const Chain& chain, std::vector<ServerSum>* terms) {
    require_verified(inst, chain);
    const int m = chain.length();
    const int tail = chain.spine.back();

    // Edges that head a tower block: the crossing centrals plus every basic
    // edge outside all crossing coverages.
    std::vector<bool> covered(m, false);
    for (int j : chain.crossing_edges()) {
        auto [lo, hi] = chain.coverage(j);
        for (int e = lo; e <= hi; ++e) covered[e] = true;
    }

    Rational total(0);
    for (int j = 0; j < m; ++j) {
        const Tower& tower = chain.towers[j];
        const bool is_head =
            tower.kind == TowerKind::kCrossing || !covered[j];
        if (!is_head) continue;
        const Floor& top = tower.floors.back();
        Subset core = tower_messages(tower);
        Subset t1 = core | bit(chain.spine[top.cover_start]) |
                    bit(chain.spine[top.cover_end]);
        Subset t2 = core | bit(chain.spine[top.cover_start]) | bit(tail);
        total += add_term(cap, t1, t2, terms);
    }

    for (int j : chain.crossing_edges()) {
        const Tower& tower = chain.towers[j];
        for (int l = 1; l < tower.height(); ++l) {
            const Floor& lo = tower.floors[l - 1];
            const Floor& hi = tower.floors[l];
            // Edges newly covered on the left by floor l+1.
            for (int e = hi.cover_start; e <= lo.cover_start - 1; ++e) {
                Subset k = tower_messages(chain.towers[e]);
                Subset t3 = k | bit(chain.spine[e]) | bit(chain.spine[e + 1]);
                Subset t4 = k | bit(chain.spine[e]) | bit(chain.spine[lo.cover_start]);
                total += add_term(cap, t3, t4, terms);
            }
            // Edges newly covered on the right.
            for (int e = lo.cover_end; e <= hi.cover_end - 1; ++e) {
                Subset k = tower_messages(chain.towers[e]);
                Subset t3 = k | bit(chain.spine[e]) | bit(chain.spine[e + 1]);
                Subset t5 = k | bit(chain.spine[e]) | bit(chain.spine[hi.cover_end]);
                total += add_term(cap, t3, t5, terms);
            }
        }
    }

    Rational scale(1, m + 1 + chain.floor_count());
    scale.canonicalize();
    return total * scale;
}

}  // namespace icb
