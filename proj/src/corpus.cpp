#include "thurston/corpus.hpp"

#include "thurston/generator.hpp"

namespace thurston {

namespace {

Permutation perm(std::vector<int> img) {
    Permutation p;
    p.img = std::move(img);
    return p;
}

CurveClass cls(const CoverPresentation& P, const char* s) {
    return canonical_curve_class(Word::parse(s), P.marked);
}

std::vector<CorpusEntry> build() {
    std::vector<CorpusEntry> out;
    {
        CorpusEntry e;
        e.name = "z3";
        e.file = "corpus/z3.cover";
        std::vector<std::vector<Word>> rows(1, std::vector<Word>(3));
        rows[0][2] = Word::parse("g1");
        e.cover = make_cover(3, {"p1", "p2"}, {1, 2}, {perm({2, 3, 1})},
                             rows, {{1, 2, 3}, {1, 3, 2}});
        e.note = "cube map; both critical points fixed with local degree three";
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "basilica";
        e.file = "corpus/basilica.cover";
        e.cover = quadratic_bases()[1];
        e.note = "quadratic with a period-two critical orbit";
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "basilica-selfmating";
        e.file = "corpus/basilica-selfmating.cover";
        // The untwisted back-to-back gluing of two period-two orbits is
        // realizable; one inverse twist along the equator block produces
        // the self-mating combinatorics, whose ray-pair curve through the
        // two glued fixed points is a fixed Levy curve.
        e.cover = apply_block_twist(quadratic_bases()[4], 1, 2, -1);
        e.curves = {cls(e.cover, "g1 g3")};
        e.expect_obstructed = true;
        e.expect_levy = true;
        e.note = "obstructed self-gluing; the curve g1 g3 lifts to itself by degree one";
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "quadratic-like";
        e.file = "corpus/quadratic-like.cover";
        e.cover = cubic_two_fixed_bases()[3];
        e.curves = {cls(e.cover, "g1 g2")};
        e.expect_obstructed = true;
        e.expect_levy = true;
        e.expect_case = ObstructionCase::QuadraticLike;
        e.note = "cubic with two fixed critical points; the curve around them "
                 "is a fixed Levy curve and the free critical values sit in a "
                 "disk face with a non-disk preimage";
        out.push_back(std::move(e));
    }
    {
        CorpusEntry e;
        e.name = "newton-like";
        e.file = "corpus/newton-like.cover";
        e.cover = apply_block_twist(cubic_two_fixed_bases()[6], 2, 3, -1);
        e.curves = {cls(e.cover, "g1 g3")};
        e.expect_obstructed = true;
        e.expect_levy = true;
        e.expect_case = ObstructionCase::NewtonLike;
        e.note = "twisted cubic whose obstruction puts a fixed critical point "
                 "inside a disk face with a non-disk preimage";
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = build();
    return entries;
}

std::vector<CorpusCheck> run_corpus() {
    std::vector<CorpusCheck> out;
    for (const auto& e : corpus()) {
        auto add = [&](const std::string& check, bool pass, std::string detail = "") {
            out.push_back({e.name, check, pass, std::move(detail)});
        };
        bool valid = validate_presentation(e.cover).pass();
        add("validation", valid == e.expect_valid,
            valid ? "" : "validate_presentation failed");
        add("restriction products", detail::honest(e.cover),
            detail::honest(e.cover) ? "" : "a fiber cycle product is off class");

        if (e.curves.empty()) continue;
        Multicurve G;
        try {
            G = Multicurve::create(e.curves, e.cover.marked);
        } catch (const error& ex) {
            add("multicurve", false, ex.what());
            continue;
        }
        add("stability", is_stable(e.cover, G),
            is_stable(e.cover, G) ? "" : "a member has an essential lift outside the system");

        Analysis a;
        try {
            a = analyze_multicurve(e.cover, G);
        } catch (const error& ex) {
            add("analysis", false, ex.what());
            continue;
        }
        bool obstructed = a.bounds.decision == LambdaDecision::AtLeastOne;
        add("obstruction", obstructed == e.expect_obstructed,
            "decision " + decision_text(a.bounds.decision));
        add("levy", !a.levy.cycles.empty() == e.expect_levy,
            e.expect_levy && a.levy.cycles.empty() ? "expected a Levy cycle, found none" : "");
        if (e.expect_case) {
            bool got = a.case_report && a.case_report->kind == *e.expect_case;
            add("case", got,
                a.case_report ? "classified " + case_text(a.case_report->kind)
                              : "classification failed: " + a.case_error);
            bool verdict = a.theorem && a.theorem->confirmed();
            add("verdict", verdict,
                a.theorem ? a.theorem->verdict : "verdict failed: " + a.theorem_error);
        }
    }
    return out;
}

} // namespace thurston
