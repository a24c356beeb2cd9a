#include "thurston/fuzz.hpp"

#include <algorithm>

#include "thurston/curves.hpp"

namespace thurston {

std::vector<CurveClass> standard_seed_classes(const CoverPresentation& P) {
    const MarkedSet& m = P.marked;
    const int n = m.n();
    std::vector<CurveClass> seeds;
    auto push = [&](const std::string& text) {
        try {
            Word w = Word::parse(text);
            if (w.empty() || peripheral_class_of(w, m)) return;
            CurveClass c = canonical_curve_class(w, m);
            if (std::find(seeds.begin(), seeds.end(), c) == seeds.end())
                seeds.push_back(c);
        } catch (const std::exception&) {
            // fails the simple-curve test: not a usable seed
        }
    };
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            std::string text;
            if (b < n) {
                text = "g" + std::to_string(a) + " g" + std::to_string(b);
            } else {
                for (int i = 1; i < n; ++i) {
                    if (i == a) continue;
                    if (!text.empty()) text += " ";
                    text += "g" + std::to_string(i);
                }
            }
            push(text);
        }
    return seeds;
}

FuzzOutcome fuzz_presentation(const CoverPresentation& P, int depth, int max_iter,
                              int max_size) {
    FuzzOutcome out;
    std::vector<std::string> seen;
    for (const CurveClass& seed : standard_seed_classes(P)) {
        ++out.saturations;
        auto r = pullback_saturate(P, {seed}, max_iter, max_size);
        if (r.status == SaturationResult::Status::Timeout) {
            ++out.timeouts;
            continue;
        }
        if (r.classes.empty()) continue; // every lift eventually inessential
        if (r.status == SaturationResult::Status::Cycle && !r.union_invariant) {
            ++out.unstable;
            continue;
        }
        if (!r.laminar) {
            ++out.nonlaminar;
            continue;
        }
        Multicurve G = Multicurve::create(r.classes, P.marked);
        if (!is_stable(P, G))
            throw error("saturation produced an unstable multicurve");

        std::string key;
        for (const auto& c : G.members) key += c.word.str() + "|";
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        ++out.multicurves;

        auto sweep = sweep_main_theorem(P, G);
        for (const auto& block : sweep.blocks) {
            if (block.obstructed()) ++out.obstructed_blocks;
            if (block.bounds.decision == LambdaDecision::Undecided)
                ++out.undecided_blocks;
            for (const auto& cycle : block.levy_cycles)
                ++out.cycle_labels[classify_levy(P, G, cycle, depth).label];
        }
        if (!sweep.confirmed)
            for (const auto& d : sweep.diagnostics) out.flags.push_back(d);

        try {
            auto verdict = verify_main_theorem(P, G);
            if (!verdict.confirmed()) {
                std::string msg = "strict verification: " + verdict.verdict;
                for (const auto& d : verdict.diagnostics) msg += "; " + d;
                out.flags.push_back(msg);
            }
        } catch (const std::exception&) {
            // preconditions absent; the blockwise sweep above already ran
        }
        out.analyzed.push_back(std::move(G));
        out.sweeps.push_back(std::move(sweep));
    }
    return out;
}

} // namespace thurston
