#include <doctest.h>

#include <random>

#include "icb/mais.hpp"
#include "paper_fixtures.hpp"
#include "test_util.hpp"

using icb::Instance;
using icb::MaisResult;

TEST_CASE("maximum acyclic sizes of the worked instances") {
    CHECK(icb::mais(fixtures::six()).size == 3);
    CHECK(icb::mais(fixtures::ten()).size == 3);
    CHECK(icb::mais(fixtures::seventeen()).size == 3);
    CHECK(icb::to_string(icb::mais(fixtures::seventeen()).bound()) == "1/3");
}

TEST_CASE("degenerate cases") {
    Instance one = icb::parse_instance_text("(1|-)", icb::ListingForm::kSideInfo);
    MaisResult r = icb::mais(one);
    CHECK(r.size == 1);
    CHECK(icb::to_string(r.bound()) == "1");

    Instance two = icb::parse_instance_text("(1|-),(2|-)", icb::ListingForm::kSideInfo);
    CHECK(icb::mais(two).size == 2);
    CHECK(icb::to_string(icb::mais(two).bound()) == "1/2");
}

TEST_CASE("witness is a maximum acyclic set with the smallest mask") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng() % 9);
        Instance inst = testutil::random_instance(n, rng);
        MaisResult r = icb::mais(inst);
        CHECK(inst.is_acyclic(r.witness));
        CHECK(icb::count(r.witness) == r.size);
        // No larger acyclic set, and no acyclic set of equal size with a
        // smaller mask.
        for (icb::Subset s = 1; s < (icb::Subset{1} << n); ++s) {
            if (icb::count(s) > r.size) CHECK_FALSE(inst.is_acyclic(s));
            if (icb::count(s) == r.size && s < r.witness)
                CHECK_FALSE(inst.is_acyclic(s));
        }
    }
}

TEST_CASE("branch and bound matches the exhaustive scan") {
    std::mt19937 rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        Instance inst = testutil::random_instance(n, rng, 30 + trial % 60);
        MaisResult a = icb::mais_exhaustive(inst);
        MaisResult b = icb::mais_branch_bound(inst);
        CHECK(a.size == b.size);
        CHECK(a.witness == b.witness);
    }
}

TEST_CASE("removing a side-information edge never decreases the size") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        Instance inst = testutil::random_instance(n, rng);
        int before = icb::mais(inst).size;
        for (int i = 0; i < n; ++i)
            for (int j : icb::members(inst.side_info(i))) {
                std::vector<icb::Subset> side_info;
                for (int v = 0; v < n; ++v) side_info.push_back(inst.side_info(v));
                side_info[i] &= ~icb::bit(j);
                CHECK(icb::mais(Instance(n, side_info)).size >= before);
            }
    }
}
