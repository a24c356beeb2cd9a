#pragma once

#include <map>
#include <string>
#include <vector>

#include "thurston/obstruction.hpp"

namespace thurston {

// Saturation seeds tried by the fuzz pipeline: for every 2-element subset
// of the marked points, the round word g_a g_b, or the product of the
// complementary generators when the subset contains the last marked
// point. Null-homotopic and peripheral words are dropped, duplicates
// merged; presentations with fewer than four marked points therefore get
// an empty seed list, since no simple closed curve is essential there.
std::vector<CurveClass> standard_seed_classes(const CoverPresentation& P);

// What running the pipeline over one presentation produced. `flags`
// collects counterexample diagnostics verbatim; a clean run leaves it
// empty. Saturation runs that stall at the budget, limit sets that fail
// to be invariant as a set, and invariant sets that are not realizable
// as disjoint curves are tallied instead of analyzed.
struct FuzzOutcome {
    int saturations = 0;
    int timeouts = 0;
    int unstable = 0;
    int nonlaminar = 0;
    int multicurves = 0; // distinct stable multicurves analyzed
    int obstructed_blocks = 0;
    int undecided_blocks = 0;
    std::map<std::string, int> cycle_labels; // classify_levy label counts
    std::vector<std::string> flags;
    std::vector<Multicurve> analyzed;  // the stable multicurves, in order
    std::vector<TheoremSweep> sweeps;  // one per analyzed multicurve
};

// Saturate separately from every standard seed, deduplicate the stable
// multicurves reached, and run the blockwise theorem sweep on each. The
// strict single-matrix verification runs as well whenever its
// preconditions hold. Levy cycles found by the sweep are classified to
// the requested depth.
FuzzOutcome fuzz_presentation(const CoverPresentation& P, int depth = 3,
                              int max_iter = 48, int max_size = 64);

} // namespace thurston
