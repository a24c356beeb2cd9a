#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thurston/curves.hpp"

namespace thurston {

// Weighted lift-count matrix of a stable multicurve: entries[i][j] sums
// 1/deg over the essential preimage components of member j landing in the
// class of member i. Exact rationals throughout.
struct TransitionMatrix {
    std::vector<CurveClass> labels;
    std::vector<std::vector<Rat>> entries;

    int size() const { return static_cast<int>(labels.size()); }
};

// Throws when some essential lift class is not itself a member, naming it.
TransitionMatrix transition_matrix(const CoverPresentation& P, const Multicurve& G);

enum class LambdaDecision { AtLeastOne, LessThanOne, Undecided };

std::string decision_text(LambdaDecision d);

// Rational bracket for the leading eigenvalue together with a decision
// against 1. A decision is only emitted with an exact certificate: a
// positive rational vector v on one diagonal block whose ratio bounds
// min_i (Bv)_i/v_i, max_i (Bv)_i/v_i settle the comparison. `witness` is
// that vector and `witness_members` the rows of the block carrying it;
// for "below one" the block shown is the one realizing the upper bound.
struct EigenvalueBounds {
    Rat lower = 0;
    Rat upper = 0;
    LambdaDecision decision = LambdaDecision::Undecided;
    std::vector<Rat> witness;
    std::vector<int> witness_members;
};

// Iterates exact Collatz-Wielandt ratio bounds blockwise over the
// strongly connected components of the support and maximizes. Floating
// point never enters; vectors are rounded to bounded denominators between
// steps, which perturbs convergence but never validity of a bound.
EigenvalueBounds leading_eigenvalue_bounds(const TransitionMatrix& M,
                                           const Rat& tol = Rat(1, 1000000000L));
EigenvalueBounds leading_eigenvalue_bounds(const std::vector<std::vector<Rat>>& entries,
                                           const Rat& tol = Rat(1, 1000000000L));

// Support digraph strongly connected, with the 1x1 zero matrix counted
// reducible: no power of it has a positive entry anywhere.
bool is_irreducible(const TransitionMatrix& M);
bool is_irreducible(const std::vector<std::vector<bool>>& support);

struct LevyEdge {
    int from = 0; // member whose lift is taken
    int to = 0;   // class of a degree-one component of that lift
    Word witness; // the component word
};

struct LevyCycle {
    // Cycle as member indices, rotated so the least index comes first;
    // witnesses[t] is the degree-one lift of members[t] landing in the
    // class of members[(t+1) % size].
    std::vector<int> members;
    std::vector<Word> witnesses;
    std::string classification = "plain";
};

struct LevyReport {
    std::vector<LevyEdge> edges;
    std::vector<LevyCycle> cycles; // elementary, deduplicated up to rotation
};

LevyReport find_levy_cycles(const CoverPresentation& P, const Multicurve& G);

// Per-cycle refinement. `pattern` holds when the cycle curves bound
// pairwise disjoint disks D_t (every inner face of the cycle alone is a
// disk). On top of that, `degenerate` asks each edge's degree-one lift to
// bound a disk preimage component carrying exactly the next disk's marked
// set, and `verified_depth` reports how many preimage levels of every D_t
// consisted of disks only. Labels: "not-degenerate" when the pattern
// fails, otherwise "removable-up-to-depth(k)", "degenerate" or "plain",
// strongest first. Removability is never claimed beyond the tested depth.
struct LevyClassification {
    bool pattern = false;
    bool degenerate = false;
    int verified_depth = 0;
    std::string label;
    std::vector<std::string> notes;
};

LevyClassification classify_levy(const CoverPresentation& P, const Multicurve& G,
                                 const LevyCycle& cycle, int depth);

enum class ObstructionCase { NewtonLike, QuadraticLike, RemovableLevy };

std::string case_text(ObstructionCase c);

// Scan of the disk faces with a non-disk preimage. `face` is the first
// qualifying face, -1 when every disk face pulls back to disks only. When
// several faces qualify, or one matches neither description, `ambiguous`
// is set and every observation lands in `notes` rather than being
// silently dropped.
struct CaseReport {
    ObstructionCase kind = ObstructionCase::RemovableLevy;
    int face = -1;
    bool ambiguous = false;
    std::vector<std::string> notes;
};

// For a cubic with two fixed critical points and a certified irreducible
// obstruction: a disk face with a non-disk preimage containing a fixed
// critical point is the Newton-like picture, one containing exactly the
// two free critical values the quadratic-like one, and if no disk face
// has a non-disk preimage the obstruction is a removable cycle (at the
// first preimage level; deeper levels are the business of classify_levy).
CaseReport classify_obstruction_case(const CoverPresentation& P, const Multicurve& G);

struct StructuralReport {
    std::vector<ValidationItem> items;
    bool pass() const;
};

// Quadratic-like consistency battery: no member separates the two fixed
// critical points, every member lifts to three degree-one components, and
// every lift class fits a face of the complement at partition level. A
// failure here means corrupted input or a bug upstream, so it is reported
// as a counterexample rather than thrown.
StructuralReport structural_checks(const CoverPresentation& P, const Multicurve& G);

struct TheoremVerdict {
    std::string verdict; // "confirmed" or "COUNTEREXAMPLE-FLAG"
    std::optional<LevyCycle> witness;
    std::vector<std::string> diagnostics;

    bool confirmed() const { return verdict == "confirmed"; }
};

// The central claim this kit checks: a certified irreducible obstruction
// of a cubic with two fixed critical points always carries a Levy cycle.
// Preconditions are errors named individually; an obstruction without a
// Levy cycle is reported with full diagnostics and never suppressed.
TheoremVerdict verify_main_theorem(const CoverPresentation& P, const Multicurve& G);

struct BlockCertificate {
    std::vector<int> members; // one strongly connected component, sorted
    EigenvalueBounds bounds;
    std::vector<LevyCycle> levy_cycles; // cycles staying inside the block

    bool obstructed() const { return bounds.decision == LambdaDecision::AtLeastOne; }
    // Some Levy cycle visits every member of the block.
    bool hamiltonian_levy() const;
};

struct TheoremSweep {
    std::vector<BlockCertificate> blocks;
    bool confirmed = true; // every obstructed block carries a Levy cycle
    std::vector<std::string> diagnostics;
};

// Blockwise form used by the fuzzer: certify each strongly connected
// block separately and demand a Levy cycle inside every obstructed one.
// Needs only a stable multicurve, any degree.
TheoremSweep sweep_main_theorem(const CoverPresentation& P, const Multicurve& G);

// Everything the analyze command reports about one (cover, multicurve)
// pair. Case classification and the strict theorem verdict are attempted
// and their precondition failures recorded instead of thrown.
struct Analysis {
    TransitionMatrix matrix;
    EigenvalueBounds bounds;
    bool irreducible = false;
    LevyReport levy; // classifications filled to the requested depth
    TheoremSweep sweep;
    std::optional<CaseReport> case_report;
    std::string case_error;
    std::optional<TheoremVerdict> theorem;
    std::string theorem_error;
    std::optional<StructuralReport> structure;
};

Analysis analyze_multicurve(const CoverPresentation& P, const Multicurve& G,
                            int depth = 3, const Rat& tol = Rat(1, 1000000000L));

namespace detail {

// Second, independent accumulation of the matrix straight from raw
// lift_curve output; analyze_multicurve asserts it agrees.
std::vector<std::vector<Rat>> transition_matrix_raw(const CoverPresentation& P,
                                                    const Multicurve& G);

// Components sorted internally, listed in order of their least vertex.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<bool>>& support);

// Definitional irreducibility via boolean matrix powers up to the size.
bool irreducible_by_powers(const std::vector<std::vector<bool>>& support);

// Coefficients of det(xI - A), ascending, exact.
std::vector<Rat> char_poly(const std::vector<std::vector<Rat>>& a);

// Sturm count of characteristic roots in [1, inf); the spectral radius of
// a nonnegative matrix is an eigenvalue, so this decides rho >= 1.
bool spectral_radius_at_least_one(const std::vector<std::vector<Rat>>& entries);

} // namespace detail

} // namespace thurston
