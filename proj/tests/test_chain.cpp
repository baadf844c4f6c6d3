#include <doctest.h>

#include <random>

#include "icb/chain.hpp"
#include "icb/chain_search.hpp"
#include "icb/json_io.hpp"
#include "icb/mais.hpp"
#include "paper_fixtures.hpp"
#include "test_util.hpp"

using icb::Chain;
using icb::Floor;
using icb::Instance;
using icb::Tower;
using icb::TowerKind;
using icb::VerifyResult;

TEST_CASE("basic tower checks") {
    Instance six = fixtures::six();
    // Edge 1-3 carrying messages 2 and 6.
    std::vector<int> spine{0, 2};
    Tower good{0, TowerKind::kBasic, {{1, 0, 1}, {5, 0, 1}}};
    CHECK(icb::verify_basic_tower(six, spine, good).ok);

    // Message 1 sits in the side information of receiver 4, so a tower on
    // grounds (1,3) cannot stack message 4.
    Tower bad{0, TowerKind::kBasic, {{3, 0, 1}}};
    VerifyResult r = icb::verify_basic_tower(six, spine, bad);
    CHECK_FALSE(r.ok);
    CHECK(r.violations.size() == 1);

    Instance seventeen = fixtures::seventeen();
    std::vector<int> tail_spine{4, 5};  // messages 5 and 6
    Tower printed{0, TowerKind::kBasic, {{11, 0, 1}, {15, 0, 1}}};
    CHECK(icb::verify_basic_tower(seventeen, tail_spine, printed).ok);
}

TEST_CASE("the worked certificates verify and evaluate") {
    struct Row {
        Instance inst;
        const char* chain;
        const char* bound;
    };
    Row rows[] = {
        {fixtures::six(), fixtures::kSixChain, "2/7"},
        {fixtures::ten(), fixtures::kTenChain, "3/10"},
        {fixtures::seventeen(), fixtures::kSeventeenChain, "5/16"},
    };
    for (const Row& row : rows) {
        Chain chain = fixtures::chain(row.chain);
        VerifyResult v = icb::verify_chain(row.inst, chain);
        CAPTURE(row.bound);
        for (const std::string& s : v.violations) CAPTURE(s);
        CHECK(v.ok);
        CHECK(icb::to_string(icb::cic_bound(row.inst, chain)) == row.bound);
    }
}

TEST_CASE("a minimal one-edge chain") {
    // Grounds (1,5) with terminal 1 in B_5, one floor 6 interfering with both.
    Instance six = fixtures::six();
    Chain chain{{0, 4}, {{0, TowerKind::kBasic, {{5, 0, 1}}}}};
    CHECK(icb::verify_chain(six, chain).ok);
    CHECK(icb::to_string(icb::cic_bound(six, chain)) == "1/3");
}

TEST_CASE("narrowing the crossing coverage breaks the certificate") {
    Instance ten = fixtures::ten();
    nlohmann::json j = nlohmann::json::parse(fixtures::kTenChain);
    j["towers"][0]["floors"][1]["t"] = 2;
    Chain mutated = icb::chain_from_json(j);
    VerifyResult v = icb::verify_chain(ten, mutated);
    CHECK_FALSE(v.ok);
    bool found = false;
    for (const std::string& s : v.violations)
        if (s.find("not strictly wider") != std::string::npos) found = true;
    CHECK(found);
    CHECK_THROWS_AS(icb::cic_bound(ten, mutated), std::invalid_argument);
}

TEST_CASE("other definition violations are reported") {
    Instance ten = fixtures::ten();
    nlohmann::json base = nlohmann::json::parse(fixtures::kTenChain);

    SUBCASE("floor ladder must not narrow") {
        nlohmann::json j = base;
        j["towers"][0]["floors"].push_back({{"k", 8}, {"s", 2}, {"t", 3}});
        VerifyResult v = icb::verify_chain(ten, icb::chain_from_json(j));
        CHECK_FALSE(v.ok);
    }
    SUBCASE("first floor anchors at its own edge") {
        nlohmann::json j = base;
        j["towers"][0]["floors"][0]["t"] = 3;
        VerifyResult v = icb::verify_chain(ten, icb::chain_from_json(j));
        CHECK_FALSE(v.ok);
    }
    SUBCASE("spine repetition is rejected") {
        nlohmann::json j = base;
        j["spine"][3] = 3;
        VerifyResult v = icb::verify_chain(ten, icb::chain_from_json(j));
        CHECK_FALSE(v.ok);
    }
    SUBCASE("terminal condition") {
        // 3 and 4 know each other, so a chain from 3 to 4 has no terminal.
        nlohmann::json j = {{"spine", {3, 1, 4}},
                            {"towers",
                             {{{"edge", 1}, {"floors", {{{"k", 6}}}}},
                              {{"edge", 2}, {"floors", {{{"k", 9}}}}}}}};
        Chain chain = icb::chain_from_json(j);
        VerifyResult v = icb::verify_chain(ten, chain);
        bool found = false;
        for (const std::string& s : v.violations)
            if (s.find("terminal") != std::string::npos) found = true;
        CHECK(found);
    }
}

TEST_CASE("floor messages may repeat across towers, spine reuse warns") {
    Instance six = fixtures::six();
    Chain chain = fixtures::chain(fixtures::kSixChain);
    // Message 6 appears in both towers; that is fine and not even a warning.
    VerifyResult v = icb::verify_chain(six, chain);
    CHECK(v.ok);
    CHECK(v.warnings.empty());

    // A floor equal to a spine message outside its own tower's grounds is
    // allowed but flagged: here message 3 stacks on edge 1-2 while also
    // ending the spine.
    Instance inst = icb::parse_instance_text("(1|2,3,4), (2|1,3,4), (3|-), (4|1)",
                                             icb::ListingForm::kSideInfo);
    Chain warned{{0, 1, 2},
                 {{0, TowerKind::kBasic, {{2, 0, 1}}},
                  {1, TowerKind::kBasic, {{3, 1, 2}}}}};
    VerifyResult w = icb::verify_chain(inst, warned);
    for (const std::string& s : w.violations) CAPTURE(s);
    CHECK(w.ok);
    REQUIRE(w.warnings.size() == 1);
    CHECK(w.warnings[0].find("spine") != std::string::npos);
}

TEST_CASE("single membership mutations flip the verdict") {
    struct Row {
        Instance inst;
        const char* chain;
    };
    Row rows[] = {
        {fixtures::six(), fixtures::kSixChain},
        {fixtures::ten(), fixtures::kTenChain},
        {fixtures::seventeen(), fixtures::kSeventeenChain},
        {fixtures::five_servers(), fixtures::kFiveServersChain},
    };
    for (const Row& row : rows) {
        Chain chain = fixtures::chain(row.chain);
        REQUIRE(icb::verify_chain(row.inst, chain).ok);
        const int n = row.inst.message_count();

        // Every pairwise membership the verifier relies on: grounds and
        // lower floors per floor, coverage endpoints, and the terminal pair
        // (only if a single direction holds).
        std::vector<std::pair<int, int>> needed;  // (member, receiver)
        for (const Tower& tower : chain.towers) {
            std::vector<int> below;
            for (const Floor& f : tower.floors) {
                for (int k : below) needed.push_back({k, f.message});
                needed.push_back({chain.spine[f.cover_start], f.message});
                needed.push_back({chain.spine[f.cover_end], f.message});
                below.push_back(f.message);
            }
        }
        int head = chain.spine.front(), tail = chain.spine.back();
        bool fwd = icb::contains(row.inst.interfering(tail), head);
        bool bwd = icb::contains(row.inst.interfering(head), tail);
        if (fwd && !bwd) needed.push_back({head, tail});
        if (bwd && !fwd) needed.push_back({tail, head});

        for (auto [member, receiver] : needed) {
            std::vector<icb::Subset> side_info;
            for (int v = 0; v < n; ++v) side_info.push_back(row.inst.side_info(v));
            side_info[receiver] |= icb::bit(member);  // drop from interfering
            Instance mutated(n, side_info);
            CHECK_FALSE(icb::verify_chain(mutated, chain).ok);
        }
    }
}

TEST_CASE("closed-form internal conflict bound") {
    CHECK(icb::to_string(icb::internal_conflict_bound(1)) == "1/3");
    CHECK(icb::to_string(icb::internal_conflict_bound(2)) == "2/5");
    CHECK_THROWS_AS(icb::internal_conflict_bound(0), std::invalid_argument);

    // Same value as the chain formula on any plain chain of that length.
    for (int delta = 1; delta <= 20; ++delta) {
        Chain plain;
        for (int p = 0; p <= delta; ++p) plain.spine.push_back(p);
        for (int j = 0; j < delta; ++j)
            plain.towers.push_back({j, TowerKind::kBasic, {{0, j, j + 1}}});
        CHECK(icb::cic_bound_unchecked(plain) == icb::internal_conflict_bound(delta));
    }
}

TEST_CASE("bound depends only on length and floor count") {
    Chain a = fixtures::chain(fixtures::kTenChain);
    Chain b = a;
    for (Tower& t : b.towers)
        for (Floor& f : t.floors) f.message = (f.message + 1) % 10;
    CHECK(icb::cic_bound_unchecked(a) == icb::cic_bound_unchecked(b));
}

TEST_CASE("maximum acyclic sets give one-edge chains") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        Instance inst = testutil::random_instance(n, rng);
        icb::MaisResult mr = icb::mais(inst);
        if (mr.size < 3) continue;
        auto chain = icb::chain_from_acyclic_set(inst, mr.witness);
        REQUIRE(chain.has_value());
        VerifyResult v = icb::verify_chain(inst, *chain);
        CHECK(v.ok);
        CHECK(icb::cic_bound_unchecked(*chain) == icb::Rational(1, mr.size));
    }
}

TEST_CASE("certificate JSON round trip") {
    Chain chain = fixtures::chain(fixtures::kSeventeenChain);
    nlohmann::json j = icb::chain_to_json(chain);
    CHECK(icb::chain_from_json(j) == chain);
}

TEST_CASE("malformed certificates are structural errors") {
    Instance six = fixtures::six();
    Chain chain = fixtures::chain(fixtures::kSixChain);
    SUBCASE("spine message out of range") {
        chain.spine[0] = 17;
        CHECK_THROWS_AS(icb::verify_chain(six, chain), std::invalid_argument);
    }
    SUBCASE("missing tower") {
        chain.towers.pop_back();
        CHECK_THROWS_AS(icb::verify_chain(six, chain), std::invalid_argument);
    }
    SUBCASE("floor out of range") {
        chain.towers[0].floors[0].message = 9;
        CHECK_THROWS_AS(icb::verify_chain(six, chain), std::invalid_argument);
    }
}
