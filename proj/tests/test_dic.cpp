#include <doctest.h>

#include <random>

#include "icb/dic.hpp"
#include "icb/json_io.hpp"
#include "paper_fixtures.hpp"
#include "test_util.hpp"

using icb::bit;
using icb::CapacityMap;
using icb::capacity_sum;
using icb::capacity_sum_enumerate;
using icb::Chain;
using icb::Rational;
using icb::Subset;

namespace {

Subset mask(std::initializer_list<int> external) {
    Subset s = 0;
    for (int i : external) s |= bit(i - 1);
    return s;
}

}  // namespace

TEST_CASE("capacity sums over uniform unit capacities") {
    CapacityMap cap(5, Rational(1));
    CHECK(capacity_sum(cap, mask({1, 2, 4}), mask({1, 3, 4})) == 26);
    CHECK(capacity_sum(cap, mask({2, 3, 5}), mask({2, 3, 5})) == 28);
    CHECK(capacity_sum(cap, 0, mask({1, 2})) == 0);
    CHECK(capacity_sum(cap, mask({1}), 0) == 0);
    CHECK(capacity_sum_enumerate(cap, mask({1, 2, 4}), mask({1, 3, 4})) == 26);
    CHECK(capacity_sum_enumerate(cap, mask({2, 3, 5}), mask({2, 3, 5})) == 28);
}

TEST_CASE("capacity sum properties") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 11);  // up to 12
        std::vector<std::pair<Subset, Rational>> overrides;
        for (int i = 0; i < 4; ++i) {
            Subset s = testutil::random_subset(n, rng);
            if (!s) continue;
            overrides.emplace_back(
                s, testutil::frac(static_cast<long>(rng() % 7),
                                  static_cast<long>(1 + rng() % 5)));
        }
        std::sort(overrides.begin(), overrides.end());
        overrides.erase(std::unique(overrides.begin(), overrides.end(),
                                    [](auto& a, auto& b) { return a.first == b.first; }),
                        overrides.end());
        CapacityMap cap(n, Rational(1, 3), overrides);

        Subset a = testutil::random_subset(n, rng);
        Subset b = testutil::random_subset(n, rng);
        // Symmetry and agreement with plain enumeration.
        CHECK(capacity_sum(cap, a, b) == capacity_sum(cap, b, a));
        CHECK(capacity_sum(cap, a, b) == capacity_sum_enumerate(cap, a, b));
        // Monotone under enlargement.
        Subset a2 = a | testutil::random_subset(n, rng);
        CHECK(capacity_sum(cap, a2, b) >= capacity_sum(cap, a, b));
    }
}

TEST_CASE("multi-server bound on the 5-message instance") {
    icb::Instance inst = fixtures::five_servers();
    Chain chain = fixtures::chain(fixtures::kFiveServersChain);
    CapacityMap uniform(5, Rational(1));

    std::vector<icb::ServerSum> terms;
    Rational bound = icb::dic_bound_singleton(inst, uniform, chain, &terms);
    CHECK(icb::to_string(bound) == "54/5");
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].value == 26);
    CHECK(terms[1].value == 28);
    CHECK(terms[0].t_a == mask({1, 2, 4}));
    CHECK(terms[0].t_b == mask({1, 3, 4}));

    // Against the full 31-server enumeration.
    CHECK(capacity_sum_enumerate(uniform, terms[0].t_a, terms[0].t_b) == 26);
    CHECK(capacity_sum_enumerate(uniform, terms[1].t_a, terms[1].t_b) == 28);

    // The centralized special case collapses to the chain formula.
    CapacityMap cic = CapacityMap::centralized(5);
    CHECK(icb::dic_bound_singleton(inst, cic, chain) == Rational(2, 5));

    CapacityMap zero(5, Rational(0));
    CHECK(icb::dic_bound_singleton(inst, zero, chain) == 0);

    // A chain with a crossing tower is rejected by the singleton form.
    icb::Instance ten = fixtures::ten();
    Chain crossing = fixtures::chain(fixtures::kTenChain);
    CapacityMap ten_uniform(10, Rational(1));
    CHECK_THROWS_AS(icb::dic_bound_singleton(ten, ten_uniform, crossing),
                    std::invalid_argument);
}

TEST_CASE("disjoint bound reduces to the singleton bound without crossings") {
    icb::Instance inst = fixtures::five_servers();
    Chain chain = fixtures::chain(fixtures::kFiveServersChain);
    CapacityMap cap(5, Rational(1, 7),
                    {{mask({1, 2}), Rational(3)}, {mask({4}), Rational(0)}});
    CHECK(icb::dic_bound_disjoint(inst, cap, chain) ==
          icb::dic_bound_singleton(inst, cap, chain));
}

TEST_CASE("centralized capacities collapse the disjoint bound to the chain bound") {
    icb::Instance ten = fixtures::ten();
    Chain chain = fixtures::chain(fixtures::kTenChain);
    CapacityMap cic = CapacityMap::centralized(10);
    CHECK(icb::dic_bound_disjoint(ten, cic, chain) == icb::cic_bound(ten, chain));

    icb::Instance seventeen = fixtures::seventeen();
    Chain printed = fixtures::chain(fixtures::kSeventeenChain);
    CHECK(icb::dic_bound_disjoint(seventeen, CapacityMap::centralized(17), printed) ==
          icb::cic_bound(seventeen, printed));
}

TEST_CASE("both summation routes agree on the 10-message chain") {
    icb::Instance ten = fixtures::ten();
    Chain chain = fixtures::chain(fixtures::kTenChain);
    CapacityMap uniform(10, Rational(1, 1023));

    std::vector<icb::ServerSum> terms;
    Rational fast = icb::dic_bound_disjoint(ten, uniform, chain, &terms);
    Rational slow(0);
    for (const icb::ServerSum& t : terms)
        slow += capacity_sum_enumerate(uniform, t.t_a, t.t_b);
    slow /= Rational(4 + 6);
    CHECK(fast == slow);
}

TEST_CASE("bounds scale linearly in the capacities") {
    icb::Instance inst = fixtures::five_servers();
    Chain chain = fixtures::chain(fixtures::kFiveServersChain);
    CapacityMap one(5, Rational(1), {{mask({2, 5}), Rational(4, 3)}});
    CapacityMap three(5, Rational(3), {{mask({2, 5}), Rational(4)}});
    CHECK(icb::dic_bound_singleton(inst, three, chain) ==
          Rational(3) * icb::dic_bound_singleton(inst, one, chain));
}

TEST_CASE("capacity map JSON round trip and validation") {
    CapacityMap cap(5, icb::parse_rational("1/3"),
                    {{mask({1, 5}), icb::parse_rational("2/7")}});
    nlohmann::json j = icb::capacities_to_json(cap);
    CapacityMap back = icb::capacities_from_json(j);
    CHECK(back.message_count() == 5);
    CHECK(back.default_value() == Rational(1, 3));
    CHECK(back.capacity(mask({1, 5})) == Rational(2, 7));
    CHECK(back.capacity(mask({1, 2})) == Rational(1, 3));
    CHECK(back.total_capacity() == cap.total_capacity());

    CHECK_THROWS_AS(CapacityMap(5, Rational(-1)), std::invalid_argument);
    CHECK_THROWS_AS(CapacityMap(5, Rational(0), {{0, Rational(1)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(CapacityMap(5, Rational(0),
                                {{mask({1}), Rational(1)}, {mask({1}), Rational(2)}}),
                    std::invalid_argument);
}

TEST_CASE("sparse total capacity avoids enumeration") {
    CapacityMap cap(60, Rational(1, 2), {{mask({1, 2, 3}), Rational(5)}});
    mpz_class servers = (mpz_class(1) << 60) - 1;
    Rational expected = Rational(1, 2) * Rational(servers) + Rational(5) - Rational(1, 2);
    CHECK(cap.total_capacity() == expected);
}
