#include <doctest.h>

#include <fstream>
#include <sstream>

#include "thurston/corpus.hpp"
#include "thurston/io.hpp"
#include "thurston/obstruction.hpp"

#include "fixtures.hpp"

using namespace thurston;
using namespace fixtures;

namespace {

const CorpusEntry& entry(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return e;
    FAIL("no corpus entry named ", name);
    static CorpusEntry dummy;
    return dummy;
}

// Tests run either from the repository root or from a build directory one
// level below it.
std::string locate(const std::string& file) {
    if (std::ifstream(file).good()) return file;
    return "../" + file;
}

} // namespace

TEST_CASE("every corpus check passes") {
    auto checks = run_corpus();
    CHECK(checks.size() > 20);
    for (const auto& c : checks) {
        CAPTURE(c.entry);
        CAPTURE(c.check);
        CAPTURE(c.detail);
        CHECK(c.pass);
    }
}

TEST_CASE("corpus table shape") {
    auto table = corpus();
    REQUIRE(table.size() == 5);
    for (const auto& name :
         {"z3", "basilica", "basilica-selfmating", "quadratic-like", "newton-like"})
        CHECK_NOTHROW(entry(name));
    CHECK_FALSE(entry("z3").expect_obstructed);
    CHECK_FALSE(entry("basilica").expect_obstructed);
    CHECK(entry("basilica-selfmating").expect_levy);
    CHECK(entry("quadratic-like").expect_case == ObstructionCase::QuadraticLike);
    CHECK(entry("newton-like").expect_case == ObstructionCase::NewtonLike);
}

TEST_CASE("files on disk match the built-in table byte for byte") {
    for (const auto& e : corpus()) {
        CAPTURE(e.name);
        auto loaded = load_presentation_file(locate(e.file));
        CHECK(presentation_text(loaded.cover, loaded.multicurve) ==
              presentation_text(e.cover, e.curves));
    }
}

TEST_CASE("self-mating equator lifts to itself with full degree") {
    const auto& e = entry("basilica-selfmating");
    auto equator = cls(e.cover, "g1 g2");
    auto lifts = lift_curve(e.cover, equator);
    REQUIRE(lifts.size() == 1);
    CHECK(lifts[0].degree == 2);
    CHECK(lifts[0].kind == LiftKind::Essential);
    REQUIRE(lifts[0].cls.has_value());
    CHECK(lifts[0].cls->word == equator.word);
}

TEST_CASE("self-mating carries a fixed Levy curve with exact eigenvalue one") {
    const auto& e = entry("basilica-selfmating");
    auto G = Multicurve::create(e.curves, e.cover.marked);
    auto A = analyze_multicurve(e.cover, G);

    REQUIRE(A.matrix.size() == 1);
    CHECK(A.matrix.entries[0][0] == Rat(1));
    CHECK(A.bounds.lower == Rat(1));
    CHECK(A.bounds.upper == Rat(1));
    CHECK(A.bounds.decision == LambdaDecision::AtLeastOne);
    CHECK(A.irreducible);

    REQUIRE(A.levy.cycles.size() == 1);
    CHECK(A.levy.cycles[0].members == std::vector<int>{0});
    CHECK(A.levy.cycles[0].witnesses[0].str() == "G1 G3");

    // The cubic-specific refinements decline quadratic input by name.
    CHECK_FALSE(A.case_report.has_value());
    CHECK(A.case_error == "precondition failed: degree is not 3");
    CHECK_FALSE(A.theorem.has_value());
    CHECK(A.theorem_error == "precondition failed: degree is not 3");
    CHECK_FALSE(A.structure.has_value());
}

TEST_CASE("quadratic-like entry: certified obstruction, confirmed theorem") {
    const auto& e = entry("quadratic-like");
    auto G = Multicurve::create(e.curves, e.cover.marked);
    auto A = analyze_multicurve(e.cover, G);

    REQUIRE(A.matrix.size() == 1);
    CHECK(A.matrix.entries[0][0] == Rat(1));
    CHECK(A.bounds.decision == LambdaDecision::AtLeastOne);
    CHECK(A.bounds.lower == Rat(1));
    CHECK(A.bounds.upper == Rat(1));
    CHECK(A.irreducible);

    REQUIRE(A.levy.cycles.size() == 1);
    CHECK(A.levy.cycles[0].witnesses[0].str() == "g1 g2");

    REQUIRE(A.case_report.has_value());
    CHECK(A.case_report->kind == ObstructionCase::QuadraticLike);
    CHECK(A.case_report->face == 0);
    // A second face fits the other description; the scan keeps the first
    // match and reports the rest instead of hiding them.
    CHECK(A.case_report->ambiguous);
    CHECK_FALSE(A.case_report->notes.empty());

    REQUIRE(A.theorem.has_value());
    CHECK(A.theorem->verdict == "confirmed");
    REQUIRE(A.theorem->witness.has_value());

    REQUIRE(A.structure.has_value());
    CHECK(A.structure->pass());
    for (const auto& item : A.structure->items) {
        CAPTURE(item.name);
        CAPTURE(item.detail);
        CHECK(item.pass);
    }
}

TEST_CASE("newton-like entry: certified obstruction, confirmed theorem") {
    const auto& e = entry("newton-like");
    auto G = Multicurve::create(e.curves, e.cover.marked);
    auto A = analyze_multicurve(e.cover, G);

    REQUIRE(A.matrix.size() == 1);
    CHECK(A.matrix.entries[0][0] == Rat(1));
    CHECK(A.bounds.decision == LambdaDecision::AtLeastOne);
    CHECK(A.irreducible);

    REQUIRE(A.levy.cycles.size() == 1);
    CHECK(A.levy.cycles[0].witnesses[0].str() == "g1 g3");

    REQUIRE(A.case_report.has_value());
    CHECK(A.case_report->kind == ObstructionCase::NewtonLike);

    REQUIRE(A.theorem.has_value());
    CHECK(A.theorem->verdict == "confirmed");

    // The structural battery is quadratic-like specific.
    CHECK_FALSE(A.structure.has_value());
}

TEST_CASE("unobstructed entries really are unobstructed") {
    for (const auto& name : {"z3", "basilica"}) {
        const auto& e = entry(name);
        CAPTURE(e.name);
        CHECK(validate_presentation(e.cover).pass());
        CHECK(detail::peripheral_condition_failures(e.cover).empty());
    }
}
