#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thurston/words.hpp"

using namespace thurston;

namespace {

MarkedSet marked(int n) {
    MarkedSet m;
    for (int i = 1; i <= n; ++i)
        m.labels.push_back("p" + std::to_string(i));
    return m;
}

Word rand_word(std::mt19937_64& rng, int n, int len) {
    std::uniform_int_distribution<int> idx(1, n - 1);
    std::uniform_int_distribution<int> sgn(0, 1);
    Word w;
    for (int i = 0; i < len; ++i) {
        int l = idx(rng);
        w.letters.push_back(sgn(rng) ? l : -l);
    }
    return w;
}

} // namespace

TEST_CASE("parse and print round-trip") {
    CHECK(Word::parse("g1 G2 g1").str() == "g1 G2 g1");
    CHECK(Word::parse("").empty());
    CHECK(Word::parse("  g3   G12 ").letters == std::vector<int>{3, -12});
    CHECK(Word{}.str() == "");
    CHECK_THROWS_AS(Word::parse("g1 x2"), error);
    CHECK_THROWS_AS(Word::parse("g"), error);
    CHECK_THROWS_AS(Word::parse("g0"), error);
    CHECK_THROWS_AS(Word::parse("gg1"), error);
}

TEST_CASE("cyclic reduction") {
    CHECK(cyclic_reduce(Word::parse("g1 g2 G2")) == Word::parse("g1"));
    CHECK(cyclic_reduce(Word::parse("G1 g2 g1")) == Word::parse("g2"));
    CHECK(cyclic_reduce(Word{}) == Word{});
    CHECK(cyclic_reduce(Word::parse("g1 g2 G1")).size() == 1);
    CHECK(cyclic_reduce(Word::parse("g1 G1")) == Word{});
}

TEST_CASE("cyclic reduction properties on random words") {
    std::mt19937_64 rng(12345);
    for (int t = 0; t < 2000; ++t) {
        Word w = rand_word(rng, 5, t % 17);
        Word r = cyclic_reduce(w);
        CHECK(cyclic_reduce(r) == r);
        CHECK(r.size() <= w.size());
        CHECK(free_conjugate(w, r));
    }
}

TEST_CASE("free conjugacy") {
    CHECK(free_conjugate(Word::parse("g1 g2"), Word::parse("g2 g1")));
    CHECK_FALSE(free_conjugate(Word::parse("g1"), Word::parse("g2")));
    CHECK_FALSE(free_conjugate(Word::parse("g1"), Word::parse("G1")));

    std::mt19937_64 rng(777);
    for (int t = 0; t < 500; ++t) {
        Word w = rand_word(rng, 4, 1 + t % 9);
        Word h = rand_word(rng, 4, t % 6);
        Word conj = h * w * h.inverse();
        CHECK(free_conjugate(w, conj));
        CHECK(free_conjugate(w, w));
        Word u = rand_word(rng, 4, 1 + t % 9);
        CHECK(free_conjugate(w, u) == free_conjugate(u, w));
    }
}

TEST_CASE("winding vectors") {
    MarkedSet m = marked(4);
    CHECK(winding_vector(Word::parse("g1 g2"), m) == std::vector<long long>{1, 1, 0});
    CHECK(winding_vector(Word::parse("g1 G1"), m) == std::vector<long long>{0, 0, 0});
    CHECK(winding_vector(Word::parse("g1 G2"), m) == std::vector<long long>{1, -1, 0});
    CHECK_THROWS_AS(winding_vector(Word::parse("g4"), m), error);
}

TEST_CASE("side partitions") {
    MarkedSet m = marked(4);
    CHECK(side_partition(Word::parse("g1 g2"), m).inside == std::vector<int>{1, 2});
    CHECK(side_partition(Word::parse("g2 g3"), m).inside == std::vector<int>{2, 3});
    CHECK(side_partition(Word::parse("g2 g3"), m).outside() == std::vector<int>{1, 4});
    // Inverse orientation lands on the same normalized side.
    CHECK(side_partition(Word::parse("G2 G1"), m).inside == std::vector<int>{1, 2});
    CHECK_THROWS_WITH(side_partition(Word::parse("g1 G2"), m),
                      "fails simple-curve homology test");
    CHECK_THROWS_WITH(side_partition(Word::parse("g1 g1"), m),
                      "fails simple-curve homology test");
    // Nontrivial word, zero homology: cannot be simple and essential.
    CHECK_THROWS_WITH(side_partition(Word::parse("g1 g2 G1 G2"), m),
                      "fails simple-curve homology test");
    CHECK_THROWS_WITH(side_partition(Word{}, m), "null-homotopic");
}

TEST_CASE("canonical curve classes") {
    MarkedSet m = marked(4);
    CurveClass a = canonical_curve_class(Word::parse("g1 g2"), m);
    CurveClass b = canonical_curve_class(Word::parse("G2 G1"), m);
    CurveClass c = canonical_curve_class(Word::parse("g2 g1"), m);
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.word == Word::parse("g1 g2"));
    CHECK(a.sides.inside == std::vector<int>{1, 2});
    CHECK_THROWS_WITH(canonical_curve_class(Word{}, m), "null-homotopic");
    CHECK_THROWS_WITH(canonical_curve_class(Word::parse("g1 G1"), m), "null-homotopic");
}

TEST_CASE("canonical form is conjugation and orientation invariant") {
    MarkedSet m = marked(5);
    std::mt19937_64 rng(424242);
    int done = 0;
    while (done < 400) {
        Word w = rand_word(rng, 5, 2 + static_cast<int>(rng() % 7));
        CurveClass base;
        try {
            base = canonical_curve_class(w, m);
        } catch (const error&) {
            continue; // not a homology-simple word, skip
        }
        Word h = rand_word(rng, 5, static_cast<int>(rng() % 5));
        CHECK(canonical_curve_class(h * w * h.inverse(), m) == base);
        CHECK(canonical_curve_class(w.inverse(), m) == base);
        CHECK(canonical_curve_class(base.word, m) == base);
        CHECK(base.sides == side_partition(w, m));
        ++done;
    }
}

TEST_CASE("peripheral classes") {
    MarkedSet m4 = marked(4);
    CHECK(peripheral_class_of(Word::parse("g3"), m4) == 3);
    CHECK(peripheral_class_of(Word::parse("g1 g2 g3"), m4) == 4);
    CHECK(peripheral_class_of(Word::parse("G3 G2 G1"), m4) == 4);
    CHECK(peripheral_class_of(Word::parse("g2 g3 g1"), m4) == 4);
    CHECK_FALSE(peripheral_class_of(Word::parse("g1 g2"), m4).has_value());
    CHECK_FALSE(peripheral_class_of(Word{}, m4).has_value());
    CHECK(peripheral_class_of(Word::parse("g2 g1 G2"), m4) == 1);

    // n = 2: both marked points describe the same curve.
    MarkedSet m2 = marked(2);
    CHECK(peripheral_class_of(Word::parse("g1"), m2) == 1);
    CHECK(peripheral_class_of(Word::parse("G1"), m2) == 1);
}

TEST_CASE("peripheral words pass the homology test") {
    for (int n = 2; n <= 6; ++n) {
        MarkedSet m = marked(n);
        for (int j = 1; j < n; ++j) {
            SidePartition sp = side_partition(peripheral_word(j, n), m);
            CHECK(sp.inside == std::vector<int>{j});
        }
        SidePartition sp = side_partition(peripheral_word(n, n), m);
        CHECK(static_cast<int>(sp.inside.size()) == n - 1);
        CHECK(sp.outside() == std::vector<int>{n});
        CHECK(peripheral_class_of(derived_last_word(n), m) == (n == 2 ? 1 : n));
    }
}
