#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thurston/words.hpp"

namespace thurston {

struct Permutation {
    // 1-based images: img[k-1] = sigma(k).
    std::vector<int> img;

    static Permutation identity(int d);
    int degree() const { return static_cast<int>(img.size()); }
    int operator()(int k) const { return img[static_cast<size_t>(k - 1)]; }
    bool is_identity() const;
    Permutation inverse() const;
    // Cycles including fixed points, each starting at its least element,
    // listed by least element. This ordering is relied on everywhere a
    // cycle needs a canonical id (its first entry).
    std::vector<std::vector<int>> cycles() const;

    bool operator==(const Permutation& rhs) const { return img == rhs.img; }
    bool operator!=(const Permutation& rhs) const { return img != rhs.img; }
};

// compose(a,b) acts k -> a(b(k)).
Permutation compose(const Permutation& a, const Permutation& b);

// Degree-d branched self-cover of the marked sphere, encoded by sheet
// monodromy per marked point plus word-valued sheet restrictions. The
// permutation of the last marked point is always the derived one, so the
// sphere relation sigma_1 ... sigma_n = id holds by construction.
struct CoverPresentation {
    int degree = 0;
    MarkedSet marked;
    std::vector<int> dynamics;                    // delta, 1-based images
    std::vector<Permutation> perms;               // size n, last derived
    std::vector<std::vector<Word>> restrictions;  // (n-1) rows of d words
    std::vector<std::vector<int>> assignments;    // per marked point, its
                                                  // preimage cycle in
                                                  // sigma_{delta(j)}

    int n() const { return marked.n(); }
    int delta(int j) const { return dynamics[static_cast<size_t>(j - 1)]; }
    const Permutation& sigma(int i) const { return perms[static_cast<size_t>(i - 1)]; }
    const Word& restriction(int i, int k) const {
        return restrictions[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)];
    }
    const std::vector<int>& assigned_cycle(int j) const {
        return assignments[static_cast<size_t>(j - 1)];
    }
    int local_degree(int j) const {
        return static_cast<int>(assigned_cycle(j).size());
    }
    // Marked point assigned to the cycle of sigma(i) whose least sheet is
    // cycle_min, or 0 when that preimage point is unmarked.
    int marked_point_over(int i, int cycle_min) const;
};

// Assemble a presentation, deriving the last permutation from the sphere
// relation. Throws on shape errors (sizes, ranges); semantic invariants
// are validate_presentation's job.
CoverPresentation make_cover(int degree,
                             std::vector<std::string> labels,
                             std::vector<int> dynamics,
                             std::vector<Permutation> head_perms,
                             std::vector<std::vector<Word>> restrictions,
                             std::vector<std::vector<int>> assignments);

struct ValidationItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool pass() const;
    std::string summary() const;
};

struct ValidationOptions {
    // Marked points outside the postcritical set are tolerated only when
    // fixed by the dynamics, and only if this flag is set.
    bool allow_extra_fixed_marked = false;
};

ValidationReport validate_presentation(const CoverPresentation& P,
                                       const ValidationOptions& opts = {});

// Forward closure of the critical values under the marked dynamics,
// as sorted marked indices.
std::vector<int> postcritical_set(const CoverPresentation& P);

// Marked points whose fiber contains a nontrivial cycle.
std::vector<int> critical_values(const CoverPresentation& P);

// Critical values having a critical preimage other than a fixed critical
// point. These are the "free" critical values of the two-fixed-critical
// analysis.
std::vector<int> free_critical_values(const CoverPresentation& P);

// Fixed marked points whose assigned preimage cycle is nontrivial,
// with local degrees.
std::vector<std::pair<int, int>> fixed_critical_points(const CoverPresentation& P);

struct WreathElement {
    Permutation perm;
    std::vector<Word> sheets; // sheets[k-1] belongs to sheet k
};

// Image of w under the multiplicative extension of the generator data:
// for letters u then v the permutation is k -> sigma_u(sigma_v(k)) and
// the sheet word at k is r_{u, sigma_v(k)} r_{v,k}.
WreathElement wreath_apply(const CoverPresentation& P, const Word& w);

enum class LiftKind { Trivial, Peripheral, Essential };

struct LiftComponent {
    Word word;              // raw component word, traversal order fixed below
    int degree = 0;         // cycle length = mapping degree onto the input
    LiftKind kind = LiftKind::Trivial;
    int peripheral_at = 0;  // marked index when kind == Peripheral
    std::optional<CurveClass> cls; // present when kind == Essential
    std::vector<int> cycle_sheets; // the sheet cycle this component came from
};

// Preimage components of the curve c, one per cycle of the lifted
// permutation. For a cycle (k, sk, ..., s^{m-1}k) starting at the least
// sheet, the component word is sheets[s^{m-1}k] ... sheets[sk] sheets[k].
//
// Classes conjugate to a peripheral word are resolved through the marked
// assignment table instead (preimages of a small loop around p_i are the
// cycles of sigma_i: peripheral around the assigned marked point, or
// trivial around an unmarked preimage). On data satisfying the peripheral
// restriction-product conditions both routes agree.
std::vector<LiftComponent> lift_curve(const CoverPresentation& P, const CurveClass& c);

struct PreimageTopology {
    std::vector<LiftComponent> boundary_lifts;
    long long total_chi = 0;
    int component_count = 0;
    bool all_disks = false;
    bool multiset_forced = false;
    std::vector<int> component_boundary_multiset; // empty when not forced
};

// Topology of the full preimage of the disk bounded by `boundary` whose
// interior marked set is `inside` (one of the two sides). Euler counts
// only; per-component boundary membership is reported when arithmetic
// forces it and flagged ambiguous otherwise.
PreimageTopology disk_preimage_topology(const CoverPresentation& P,
                                        const CurveClass& boundary,
                                        const std::vector<int>& inside);

struct OrbifoldSignature {
    // One entry per marked point; nullopt encodes infinity.
    std::vector<std::optional<long long>> nu;
    Rat chi_orb;
    bool hyperbolic() const { return chi_orb < 0; }
};

OrbifoldSignature orbifold_signature(const CoverPresentation& P);

namespace detail {

// Realizability of the presentation as a genuine marked Thurston map:
// along every assigned cycle of every fiber (the derived one included)
// the restriction product must be conjugate to the peripheral word of
// the assigned marked point, and must reduce to the identity along every
// unassigned cycle. Deliberately not part of validate_presentation;
// the generator enforces it on everything it emits.
std::vector<std::string> peripheral_condition_failures(const CoverPresentation& P);

// Restriction product along the cycle of sigma_i starting at the least
// sheet of `cycle`, same traversal convention as lift_curve.
Word cycle_product(const CoverPresentation& P, int i, const std::vector<int>& cycle);

} // namespace detail

} // namespace thurston
