#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thurston/rational.hpp"

namespace thurston {

// Ordered marked points p_1..p_n on the sphere. The fundamental group of
// the complement is free on g_1..g_{n-1}; the loop around p_n is the
// derived word (g_1 ... g_{n-1})^{-1}.
struct MarkedSet {
    std::vector<std::string> labels;

    int n() const { return static_cast<int>(labels.size()); }
    // 1-based index, 0 when the label is unknown.
    int index_of(const std::string& label) const;
};

// Free-group word. Letter +i is g_i, letter -i is g_i^{-1}; indices are
// 1-based and must stay below the marked-point count of whatever marked
// set the word is used with.
struct Word {
    std::vector<int> letters;

    Word() = default;
    explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

    bool empty() const { return letters.empty(); }
    int size() const { return static_cast<int>(letters.size()); }

    Word inverse() const;
    Word operator*(const Word& rhs) const; // concatenation, not reduced

    bool operator==(const Word& rhs) const { return letters == rhs.letters; }
    bool operator!=(const Word& rhs) const { return letters != rhs.letters; }

    // Serialized as whitespace-separated tokens g<i> / G<i> (capital =
    // inverse); the empty word prints as the empty string.
    static Word parse(const std::string& text);
    std::string str() const;
};

// Total order on letters used everywhere a canonical choice is needed:
// g1 < G1 < g2 < G2 < ...
int letter_key(int letter);
bool word_less(const Word& a, const Word& b);

Word free_reduce(const Word& w);

// Free reduction followed by cancelling first-against-last letters.
// Idempotent; the result is the conjugacy normal form up to rotation.
Word cyclic_reduce(const Word& w);

// True iff u and v are conjugate in the free group (equal cyclic
// reductions up to rotation). Orientation is NOT forgotten here.
bool free_conjugate(const Word& u, const Word& v);

// Exponent sums of g_1..g_{n-1}, i.e. the homology class of the loop.
std::vector<long long> winding_vector(const Word& w, const MarkedSet& m);

// Unordered two-sided partition of the marked points cut out by a simple
// closed curve. Normalized so p_n sits on the outside; `inside` holds
// sorted indices from 1..n-1.
struct SidePartition {
    int n = 0;
    std::vector<int> inside;

    std::vector<int> outside() const;
    bool operator==(const SidePartition& rhs) const {
        return n == rhs.n && inside == rhs.inside;
    }
};

// Derive the partition from the winding vector, normalizing signs so all
// entries land in {0,1}. Mixed signs, |entry| >= 2, and the all-zero
// vector of a nontrivial word are rejected: such words fail the (necessary,
// not sufficient) homology test for simpleness.
SidePartition side_partition(const Word& w, const MarkedSet& m);

// Unoriented isotopy class of a simple closed curve: lexicographically
// least rotation among rotations of the cyclic reduction and of its
// inverse, plus the induced side partition.
struct CurveClass {
    Word word;
    SidePartition sides;

    bool operator==(const CurveClass& rhs) const { return word == rhs.word; }
    bool operator!=(const CurveClass& rhs) const { return word != rhs.word; }
    bool operator<(const CurveClass& rhs) const { return word_less(word, rhs.word); }
};

CurveClass canonical_curve_class(const Word& w, const MarkedSet& m);

// p_i when w is conjugate to g_i^{+-1} (i < n), p_n when conjugate to the
// derived word or its inverse, nullopt otherwise. For n = 2 the two
// descriptions coincide and the smaller index wins.
std::optional<int> peripheral_class_of(const Word& w, const MarkedSet& m);

// Loop around p_j: the generator for j < n, the derived word for j = n.
Word peripheral_word(int j, int n);
Word derived_last_word(int n);

} // namespace thurston
