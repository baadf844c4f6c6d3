#include <doctest.h>

#include <random>

#include "icb/instance.hpp"
#include "icb/json_io.hpp"
#include "paper_fixtures.hpp"
#include "test_util.hpp"

using icb::bit;
using icb::Instance;
using icb::ListingForm;
using icb::parse_instance_text;
using icb::Subset;

TEST_CASE("parsing the listing notation") {
    Instance inst = parse_instance_text("(1|-), (2|3), (3|2)", ListingForm::kSideInfo);
    CHECK(inst.message_count() == 3);
    CHECK(inst.side_info(0) == 0);
    CHECK(inst.side_info(1) == bit(2));
    CHECK(inst.side_info(2) == bit(1));

    Instance single = parse_instance_text("(1|-)", ListingForm::kSideInfo);
    CHECK(single.message_count() == 1);
    CHECK(single.side_info(0) == 0);
    CHECK(single.interfering(0) == 0);
}

TEST_CASE("interfering sets from both forms") {
    Instance six = fixtures::six();
    CHECK(six.interfering(5) == (icb::full_set(6) & ~bit(5)));  // all of 1..5
    CHECK(six.interfering(0) == bit(4));                        // exactly {5}

    // The 17-message listing is written by interfering sets; side info is
    // reconstructed as the complement.
    Instance seventeen = fixtures::seventeen();
    CHECK(seventeen.interfering(0) == bit(5));
    CHECK(seventeen.side_info(0) ==
          (icb::full_set(17) & ~(bit(0) | bit(5))));
}

TEST_CASE("whitespace and trailing commas are tolerated") {
    Instance a = parse_instance_text("(1|-),\n  (2|3)  , (3|2),", ListingForm::kSideInfo);
    Instance b = parse_instance_text("(1|-),(2|3),(3|2)", ListingForm::kSideInfo);
    CHECK(a == b);
}

TEST_CASE("entries may come out of order") {
    Instance a = parse_instance_text("(2|3), (3|2), (1|-)", ListingForm::kSideInfo);
    Instance b = parse_instance_text("(1|-), (2|3), (3|2)", ListingForm::kSideInfo);
    CHECK(a == b);
}

TEST_CASE("parse errors carry the entry position") {
    using icb::ParseError;
    CHECK_THROWS_WITH_AS(parse_instance_text("(1|-), (1|-)", ListingForm::kSideInfo),
                         doctest::Contains("entry 2"), ParseError);
    CHECK_THROWS_WITH_AS(parse_instance_text("(1|-), (5|-)", ListingForm::kSideInfo),
                         doctest::Contains("out of range"), ParseError);
    CHECK_THROWS_WITH_AS(parse_instance_text("(1|1), (2|-)", ListingForm::kSideInfo),
                         doctest::Contains("itself"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("(1|", ListingForm::kSideInfo), ParseError);
    CHECK_THROWS_AS(parse_instance_text("", ListingForm::kSideInfo), ParseError);
    CHECK_THROWS_AS(parse_instance_text("(1|2", ListingForm::kSideInfo), ParseError);
}

TEST_CASE("round trip through both text forms") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        Instance inst = testutil::random_instance(n, rng);
        for (ListingForm form : {ListingForm::kSideInfo, ListingForm::kInterfering}) {
            std::string text = render_instance_text(inst, form);
            CHECK(parse_instance_text(text, form) == inst);
        }
    }
}

TEST_CASE("interfering-form parsing equals complementing the side-info form") {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        Instance inst = testutil::random_instance(n, rng);
        std::string b_text = render_instance_text(inst, ListingForm::kInterfering);
        Instance back = parse_instance_text(b_text, ListingForm::kInterfering);
        CHECK(back == inst);
        for (int i = 0; i < n; ++i)
            CHECK(back.side_info(i) ==
                  (inst.all_messages() & ~(inst.interfering(i) | bit(i))));
    }
}

TEST_CASE("acyclicity basics") {
    Instance six = fixtures::six();
    for (int i = 0; i < 6; ++i) CHECK(six.is_acyclic(bit(i)));
    CHECK(six.is_acyclic(0));

    Instance two = parse_instance_text("(1|2),(2|1)", ListingForm::kSideInfo);
    CHECK_FALSE(two.is_acyclic(bit(0) | bit(1)));

    // Messages 1 and 3 know each other in the 6-message instance, so any
    // superset of the pair is cyclic.
    CHECK_FALSE(six.is_acyclic(bit(0) | bit(2) | bit(4)));
}

TEST_CASE("acyclicity agrees with the permutation oracle") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        Instance inst = testutil::random_instance(n, rng);
        for (int rep = 0; rep < 20; ++rep) {
            Subset s = testutil::random_subset(n, rng);
            if (icb::count(s) > 6) continue;
            CHECK(inst.is_acyclic(s) == icb::is_acyclic_by_permutation(inst, s));
        }
    }
}

TEST_CASE("acyclicity is monotone under subsets") {
    std::mt19937 rng(10);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        Instance inst = testutil::random_instance(n, rng);
        for (int rep = 0; rep < 20; ++rep) {
            Subset s = testutil::random_subset(n, rng);
            Subset t = s | testutil::random_subset(n, rng);
            if (!inst.is_acyclic(s)) CHECK_FALSE(inst.is_acyclic(t));
        }
    }
}

TEST_CASE("instance JSON round trip and validation") {
    Instance six = fixtures::six();
    for (ListingForm form : {ListingForm::kSideInfo, ListingForm::kInterfering}) {
        nlohmann::json j = icb::instance_to_json(six, form);
        CHECK(icb::instance_from_json(j) == six);
    }
    nlohmann::json bad = {{"n", 2}, {"A", {{"1", {2}}}}};
    CHECK_THROWS_AS(icb::instance_from_json(bad), icb::ParseError);  // missing "2"
    nlohmann::json both = {{"n", 1}, {"A", {{"1", nlohmann::json::array()}}},
                           {"B", {{"1", nlohmann::json::array()}}}};
    CHECK_THROWS_AS(icb::instance_from_json(both), icb::ParseError);
}

TEST_CASE("text or JSON detection") {
    Instance six = fixtures::six();
    std::string json_text = icb::instance_to_json(six, ListingForm::kSideInfo).dump();
    CHECK(icb::instance_from_text_or_json(json_text, ListingForm::kSideInfo) == six);
    CHECK(icb::instance_from_text_or_json(fixtures::kSix, ListingForm::kSideInfo) == six);
}
