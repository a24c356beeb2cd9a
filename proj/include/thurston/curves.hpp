#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thurston/cover.hpp"

namespace thurston {

// Finite system of essential curve classes that is pairwise realizable as
// disjoint curves at the level of side partitions: any two inside-sets are
// nested (equality included) or disjoint. Members are kept sorted in the
// canonical word order and must be pairwise distinct.
struct Multicurve {
    MarkedSet marked;
    std::vector<CurveClass> members;

    static Multicurve create(std::vector<CurveClass> classes, const MarkedSet& m);

    int size() const { return static_cast<int>(members.size()); }
    bool empty() const { return members.empty(); }
    bool contains(const CurveClass& c) const;
    // Index of the member equal to c, or -1.
    int index_of(const CurveClass& c) const;
};

// Pairwise compatibility of the side partitions alone.
bool partitions_laminar(const std::vector<CurveClass>& classes);

// Essential preimage components of each member, as (class, degree) pairs
// in lift order. Trivial and peripheral components are dropped.
std::vector<std::vector<std::pair<CurveClass, int>>>
essential_lifts(const CoverPresentation& P, const Multicurve& G);

// First essential lift class that is not itself a member, if any.
std::optional<CurveClass> unstable_witness(const CoverPresentation& P,
                                           const Multicurve& G);

// Every essential lift of every member is again a member. Vacuously true
// for the empty multicurve.
bool is_stable(const CoverPresentation& P, const Multicurve& G);

struct SaturationResult {
    enum class Status { Fixed, Cycle, Timeout };
    Status status = Status::Timeout;
    // The invariant set (Fixed) or the union over one period (Cycle).
    std::vector<CurveClass> classes;
    int iterations = 0;
    int period = 0;
    bool union_invariant = false; // Cycle only: the union maps onto itself
    bool laminar = false;         // `classes` pass the pairwise partition check
    std::string note;
};

// Iterate taking a class set to the set of its essential lift classes,
// starting from the seeds, until the set sequence repeats or a budget is
// hit. A repeat of the previous set is a fixed point; a longer repeat is
// reported as a cycle together with the union over one period.
SaturationResult pullback_saturate(const CoverPresentation& P,
                                   std::vector<CurveClass> seeds,
                                   int max_iter = 64, int max_size = 256);

// One complementary region of the realized multicurve. The face inside a
// member lists that member first in `boundary`, then the members directly
// nested in it.
struct Face {
    std::vector<int> boundary; // member indices
    std::vector<int> marked;   // interior marked points, sorted
    int enclosing = -1;        // member whose inner face this is, -1 for root
};

struct FaceTree {
    int n = 0;
    std::vector<CurveClass> members; // multicurve order
    std::vector<Face> faces;         // faces[0] is the root (contains p_n)

    bool is_disk(int face) const {
        return faces[static_cast<size_t>(face)].boundary.size() == 1;
    }
    // The face directly inside member i; faces[0] is outside every top
    // level member, and the face directly outside member i is the inner
    // face of its enclosing member (or the root).
    int inner_face(int member) const { return member + 1; }
    int outer_face(int member) const;
    int face_of_marked(int j) const;
    // All marked points strictly beyond the given boundary curve of the
    // face, i.e. on the far side as seen from inside the face.
    std::vector<int> branch_marked(int face, int member) const;
};

// Nesting structure of the complement of the realized system. Curves with
// equal inside-sets are realized as a parallel stack, innermost the one
// with the lexicographically later canonical word. Faces are one per
// member plus the root, and the marked points partition across them.
FaceTree face_structure(const Multicurve& G, const MarkedSet& m);

// Partition-level test that the curve can be isotoped into the closure of
// some face: each branch of marked points hanging off the face lies
// entirely on one side of the curve, and what remains of the curve's
// inside is interior marked points of the face itself.
bool partition_contained(const FaceTree& T, const CurveClass& c);

} // namespace thurston
