#pragma once

// Hand-checked example covers shared across the test binaries.

#include <random>
#include <string>
#include <vector>

#include "thurston/cover.hpp"

namespace fixtures {

using namespace thurston;

inline Word W(const std::string& s) { return Word::parse(s); }

inline Permutation perm(std::vector<int> img) {
    Permutation p;
    p.img = std::move(img);
    return p;
}

inline std::vector<std::string> labels(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("p" + std::to_string(i));
    return out;
}

inline std::vector<std::vector<Word>> trivial_rows(int rows, int d) {
    return std::vector<std::vector<Word>>(static_cast<size_t>(rows),
                                          std::vector<Word>(static_cast<size_t>(d)));
}

// Degree 3, two fixed marked points, both fibers a single 3-cycle. Blank
// restriction words: consistent sheet data, dishonest restriction products.
inline CoverPresentation cubic_power_blank() {
    return make_cover(3, labels(2), {1, 2}, {perm({2, 3, 1})},
                      trivial_rows(1, 3), {{1, 2, 3}, {1, 3, 2}});
}

// Same cover with the honest restriction row.
inline CoverPresentation cubic_power() {
    auto rows = trivial_rows(1, 3);
    rows[0][2] = W("g1");
    return make_cover(3, labels(2), {1, 2}, {perm({2, 3, 1})},
                      rows, {{1, 2, 3}, {1, 3, 2}});
}

// Quadratic with a two-cycle of marked points and a fixed point at
// infinity; the standard period-two example.
inline CoverPresentation basilica() {
    auto rows = trivial_rows(2, 2);
    rows[0][1] = W("g2");
    rows[1][1] = W("g1");
    return make_cover(2, labels(3), {2, 1, 3}, {perm({2, 1}), perm({1, 2})},
                      rows, {{2}, {1, 2}, {1, 2}});
}

// Quadratic with two period-two critical orbits, the formal mating of the
// period-two polynomial with itself. The class of g1 g2 is its equator.
inline CoverPresentation mating_base() {
    auto rows = trivial_rows(3, 2);
    rows[0][0] = W("g1 g2");
    rows[0][1] = W("G1");
    rows[1][1] = W("g1");
    rows[2][1] = W("G2 G1 G3");
    return make_cover(2, labels(4), {2, 1, 4, 3},
                      {perm({2, 1}), perm({1, 2}), perm({2, 1})},
                      rows, {{2}, {1, 2}, {2}, {1, 2}});
}

// Quadratic whose finite critical value lands on a fixed marked point.
inline CoverPresentation chebyshev_like() {
    return make_cover(2, labels(3), {2, 2, 3}, {perm({2, 1}), perm({1, 2})},
                      trivial_rows(2, 2), {{1}, {2}, {1, 2}});
}

inline CoverPresentation rabbit_like() {
    return make_cover(2, labels(4), {2, 3, 1, 4},
                      {perm({2, 1}), perm({1, 2}), perm({1, 2})},
                      trivial_rows(3, 2), {{1}, {1}, {1, 2}, {1, 2}});
}

// Degree 3 with four simple branch fibers and a spare fixed marked point.
// Restriction words are blank: only sheet-level topology is exercised.
inline CoverPresentation four_transpositions() {
    return make_cover(3, labels(5), {2, 1, 4, 3, 5},
                      {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1}), perm({3, 2, 1})},
                      trivial_rows(4, 3), {{1, 2}, {1, 2}, {1, 3}, {1, 3}, {1}});
}

// Synthetic quadratic cooked so the classes of g1 g2 and g3 g4 lift to one
// another: a period-two orbit for the pullback iteration. Not a honest
// cover; sheet-word algebra only.
inline CoverPresentation swapping_pair() {
    auto rows = trivial_rows(4, 2);
    rows[0][1] = W("g3 g4");
    rows[2][0] = W("g1 g2");
    return make_cover(2, labels(5), {1, 2, 3, 4, 5},
                      {perm({2, 1}), perm({2, 1}), perm({1, 2}), perm({1, 2})},
                      rows, {{1, 2}, {1, 2}, {1}, {1}, {1}});
}

inline CurveClass cls(const CoverPresentation& P, const std::string& s) {
    return canonical_curve_class(W(s), P.marked);
}

inline Word rand_word(std::mt19937_64& rng, int max_index, int len) {
    std::vector<int> ls;
    std::uniform_int_distribution<int> idx(1, max_index);
    std::uniform_int_distribution<int> sgn(0, 1);
    for (int i = 0; i < len; ++i) {
        int l = idx(rng);
        ls.push_back(sgn(rng) ? l : -l);
    }
    return Word{std::move(ls)};
}

} // namespace fixtures
