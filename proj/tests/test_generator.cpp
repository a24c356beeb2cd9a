#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "thurston/generator.hpp"
#include "thurston/io.hpp"

using namespace thurston;

TEST_CASE("base tables are honest and carry the advertised critical data") {
    for (const auto& P : cubic_two_fixed_bases()) {
        CAPTURE(presentation_text(P));
        CHECK(P.degree == 3);
        CHECK(validate_presentation(P).pass());
        CHECK(detail::peripheral_condition_failures(P).empty());
        auto fixed = fixed_critical_points(P);
        REQUIRE(fixed.size() == 2);
        CHECK(fixed[0] == std::pair<int, int>{1, 2});
        CHECK(fixed[1] == std::pair<int, int>{2, 2});
    }
    for (const auto& P : quadratic_bases()) {
        CAPTURE(presentation_text(P));
        CHECK(P.degree == 2);
        CHECK(validate_presentation(P).pass());
        CHECK(detail::peripheral_condition_failures(P).empty());
    }
    CHECK(cubic_two_fixed_bases().size() >= 5);
    CHECK(quadratic_bases().size() >= 4);
}

TEST_CASE("gauge moves preserve honesty and the sheet data") {
    auto P = fixtures::mating_base();
    std::vector<Word> h{fixtures::W("g1"), fixtures::W("G2 g3")};
    auto Q = apply_gauge(P, h);
    CHECK(detail::honest(Q));
    for (int i = 1; i <= P.n(); ++i) CHECK(Q.sigma(i) == P.sigma(i));
    CHECK(Q.assignments == P.assignments);
    CHECK(presentation_text(Q) != presentation_text(P));
    CHECK_THROWS_WITH(apply_gauge(P, {fixtures::W("g1")}), "gauge vector size mismatch");
}

TEST_CASE("block twists move only the block and keep the derived fiber") {
    auto P = fixtures::mating_base();
    for (int dir : {1, -1}) {
        for (auto [a, b] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{1, 3}}) {
            auto Q = apply_block_twist(P, a, b, dir);
            CAPTURE(a);
            CAPTURE(b);
            CAPTURE(dir);
            CHECK(detail::honest(Q));
            CHECK(Q.sigma(P.n()) == P.sigma(P.n()));
            for (int j = 1; j < P.n(); ++j)
                if (j < a || j > b) CHECK(Q.sigma(j) == P.sigma(j));
        }
    }
    // a twist and its inverse cancel
    auto R = apply_block_twist(apply_block_twist(P, 1, 2, 1), 1, 2, -1);
    CHECK(presentation_text(R) == presentation_text(P));
    CHECK_THROWS_WITH(apply_block_twist(P, 2, 2, 1), "twist block out of range");
    CHECK_THROWS_WITH(apply_block_twist(P, 1, 4, 1), "twist block out of range");
}

TEST_CASE("sheet relabeling is an honest change of coordinates") {
    auto P = cubic_two_fixed_bases()[0];
    auto rho = fixtures::perm({3, 1, 2});
    auto Q = apply_sheet_relabel(P, rho);
    CHECK(detail::honest(Q));
    auto R = apply_sheet_relabel(Q, rho.inverse());
    CHECK(presentation_text(R) == presentation_text(P));
    // conjugate permutations sheet by sheet
    for (int i = 1; i <= P.n(); ++i)
        for (int k = 1; k <= P.degree; ++k) CHECK(Q.sigma(i)(rho(k)) == rho(P.sigma(i)(k)));
}

TEST_CASE("generated instances are deterministic per config") {
    GeneratorConfig cfg;
    cfg.seed = 41;
    cfg.count = 12;
    auto first = generate_random_cubic_two_fixed(cfg);
    auto second = generate_random_cubic_two_fixed(cfg);
    REQUIRE(first.size() == 12);
    for (size_t i = 0; i < first.size(); ++i)
        CHECK(presentation_text(first[i]) == presentation_text(second[i]));

    cfg.seed = 42;
    auto other = generate_random_cubic_two_fixed(cfg);
    bool any_diff = false;
    for (size_t i = 0; i < first.size(); ++i)
        if (presentation_text(first[i]) != presentation_text(other[i])) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("every generated cubic is honest with two simple fixed criticals") {
    GeneratorConfig cfg;
    cfg.seed = 7;
    cfg.count = 60;
    auto batch = generate_random_cubic_two_fixed(cfg);
    REQUIRE(batch.size() == 60);
    std::set<std::string> texts;
    std::set<int> sizes;
    for (const auto& P : batch) {
        CAPTURE(presentation_text(P));
        CHECK(P.degree == 3);
        CHECK(validate_presentation(P).pass());
        CHECK(detail::peripheral_condition_failures(P).empty());
        auto fixed = fixed_critical_points(P);
        REQUIRE(fixed.size() == 2);
        CHECK(fixed[0].second == 2);
        CHECK(fixed[1].second == 2);
        texts.insert(presentation_text(P));
        sizes.insert(P.n());
    }
    CHECK(texts.size() > 20);
    CHECK(sizes.size() > 1); // different marked counts, so different isomorphism types
}

TEST_CASE("every generated quadratic is honest") {
    GeneratorConfig cfg;
    cfg.seed = 19;
    cfg.count = 60;
    auto batch = generate_random_quadratic(cfg);
    REQUIRE(batch.size() == 60);
    std::set<std::string> texts;
    for (const auto& P : batch) {
        CAPTURE(presentation_text(P));
        CHECK(P.degree == 2);
        CHECK(validate_presentation(P).pass());
        CHECK(detail::peripheral_condition_failures(P).empty());
        texts.insert(presentation_text(P));
    }
    CHECK(texts.size() > 20);
}

TEST_CASE("the word length bound caps emitted restriction rows") {
    GeneratorConfig cfg;
    cfg.seed = 3;
    cfg.count = 40;
    cfg.word_length_bound = 4; // what the longest base row already needs
    for (const auto& P : generate_random_cubic_two_fixed(cfg))
        for (const auto& row : P.restrictions)
            for (const auto& w : row) CHECK(w.letters.size() <= 4);
}

TEST_CASE("the deterministic rng is uniform enough and in range") {
    detail::SplitMix64 rng{99};
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        auto v = rng.below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}
