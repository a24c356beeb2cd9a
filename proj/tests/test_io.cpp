#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "thurston/io.hpp"

using namespace thurston;
using fixtures::W;

TEST_CASE("presentation text round trips byte for byte") {
    for (const CoverPresentation& P :
         {fixtures::cubic_power(), fixtures::basilica(), fixtures::mating_base(),
          fixtures::four_transpositions(), fixtures::swapping_pair()}) {
        std::string once = presentation_text(P);
        CoverPresentation Q = parse_presentation_file(once, "mem").cover;
        CHECK(presentation_text(Q) == once);
        CHECK(Q.degree == P.degree);
        CHECK(Q.marked.labels == P.marked.labels);
        CHECK(Q.dynamics == P.dynamics);
        for (int i = 1; i < P.n(); ++i) CHECK(Q.sigma(i) == P.sigma(i));
        for (int i = 1; i < P.n(); ++i)
            for (int k = 1; k <= P.degree; ++k)
                CHECK(Q.restriction(i, k) == P.restriction(i, k));
        for (int j = 1; j <= P.n(); ++j) CHECK(Q.assigned_cycle(j) == P.assigned_cycle(j));
    }
}

TEST_CASE("a hand-written file parses to the expected presentation") {
    std::string text =
        "# the cube map with both critical points marked\n"
        "degree 3\n"
        "marked p1 p2\n"
        "dynamics p1>p1 p2>p2\n"
        "\n"
        "perm p1 (1 2 3)\n"
        "rest p1 1:\n"
        "rest p1 2:\n"
        "rest p1 3: g1   # wraps past the base sheet\n"
        "assign p1 = p1@(1 2 3)\n"
        "assign p2 = p2@(1 3 2)\n";
    auto got = parse_presentation_file(text, "cube.cover");
    const auto& P = got.cover;
    auto ref = fixtures::cubic_power();
    CHECK(P.degree == 3);
    CHECK(P.marked.labels == ref.marked.labels);
    CHECK(P.dynamics == ref.dynamics);
    CHECK(P.sigma(1) == ref.sigma(1));
    CHECK(P.restriction(1, 3) == W("g1"));
    CHECK(P.assigned_cycle(1) == std::vector<int>{1, 2, 3});
    CHECK(P.assigned_cycle(2) == std::vector<int>{1, 3, 2});
    CHECK(got.multicurve.empty());
    CHECK(validate_presentation(P).pass());
}

TEST_CASE("omitted perm and rest lines default to identity and empty") {
    std::string text =
        "degree 2\n"
        "marked a b c\n"
        "dynamics a>b b>a c>c\n"
        "assign a = b@(1)\n"
        "assign b = a@(1 2)\n"
        "assign c = c@(1)\n";
    auto P = parse_presentation_file(text, "mem").cover;
    CHECK(P.sigma(1).is_identity());
    CHECK(P.sigma(2).is_identity());
    for (int i = 1; i < P.n(); ++i)
        for (int k = 1; k <= P.degree; ++k) CHECK(P.restriction(i, k).empty());
}

TEST_CASE("assign cycles are stored least entry first") {
    std::string text =
        "degree 3\n"
        "marked p1 p2\n"
        "dynamics p1>p1 p2>p2\n"
        "perm p1 (1 2 3)\n"
        "assign p1 = p1@(2 3 1)\n"
        "assign p2 = p2@(3 2 1)\n";
    auto P = parse_presentation_file(text, "mem").cover;
    CHECK(P.assigned_cycle(1) == std::vector<int>{1, 2, 3});
    CHECK(P.assigned_cycle(2) == std::vector<int>{1, 3, 2});
}

TEST_CASE("multicurve block collects canonical classes in order") {
    auto P = fixtures::mating_base();
    std::vector<CurveClass> curves{fixtures::cls(P, "g1 g2"), fixtures::cls(P, "g2 g3")};
    std::string once = presentation_text(P, curves);
    auto got = parse_presentation_file(once, "mem");
    REQUIRE(got.multicurve.size() == 2);
    CHECK(got.multicurve[0] == curves[0]);
    CHECK(got.multicurve[1] == curves[1]);
    CHECK(presentation_text(got.cover, got.multicurve) == once);

    // words are canonicalized, not stored verbatim
    std::string conj = once + "g2 g1 g2 G2\n";
    auto again = parse_presentation_file(conj, "mem");
    REQUIRE(again.multicurve.size() == 3);
    CHECK(again.multicurve[2] == fixtures::cls(P, "g1 g2"));
}

TEST_CASE("curves files parse and serialize one word per line") {
    auto P = fixtures::mating_base();
    std::vector<CurveClass> curves{fixtures::cls(P, "g1 g2"), fixtures::cls(P, "g3")};
    std::string text = curves_text(curves);
    auto got = parse_curves(text, "mem", P.marked);
    REQUIRE(got.size() == 2);
    CHECK(got[0] == curves[0]);
    CHECK(got[1] == curves[1]);
    CHECK(curves_text(got) == text);

    auto with_noise = parse_curves("# heading\n\n  g1 g2  # trailing\n", "mem", P.marked);
    REQUIRE(with_noise.size() == 1);
    CHECK(with_noise[0] == curves[0]);

    CHECK_THROWS_WITH(parse_curves("g1 q7\n", "c.curves", P.marked),
                      "c.curves:1: bad word token: q7");
    CHECK_THROWS_WITH(parse_curves("g9\n", "c.curves", P.marked),
                      "c.curves:1: word letter g9 out of range for 4 marked points");
}

TEST_CASE("parse errors name the source and line") {
    const std::string base =
        "degree 2\n"
        "marked a b c\n"
        "dynamics a>b b>a c>c\n";

    CHECK_THROWS_WITH(parse_presentation_file(base + "assign a = b@(1)\nassign b = a@(1 2)\n",
                                              "f.cover"),
                      "f.cover: missing assign line for `c`");
    CHECK_THROWS_WITH(parse_presentation_file("marked a b\n", "f.cover"),
                      "f.cover: missing `degree` line");
    CHECK_THROWS_WITH(parse_presentation_file("degree 2\nmarked a b\n", "f.cover"),
                      "f.cover: missing `dynamics` line");
    CHECK_THROWS_WITH(parse_presentation_file(base + "perm c (1 2)\n", "f.cover"),
                      "f.cover:4: the permutation of `c` is derived and must be omitted");
    CHECK_THROWS_WITH(parse_presentation_file(base + "rest c 1: g1\n", "f.cover"),
                      "f.cover:4: the derived point `c` has no restriction row");
    CHECK_THROWS_WITH(parse_presentation_file(base + "rest a 1: g1 xg\n", "f.cover"),
                      "f.cover:4: bad word token: xg");
    CHECK_THROWS_WITH(parse_presentation_file(base + "rest a 1: g5\n", "f.cover"),
                      "f.cover:4: word letter g5 out of range for 3 marked points");
    CHECK_THROWS_WITH(parse_presentation_file(base + "rest a 3: g1\n", "f.cover"),
                      "f.cover:4: sheet 3 out of range 1..2");
    CHECK_THROWS_WITH(parse_presentation_file(base + "perm a (1 2) (2 1)\n", "f.cover"),
                      "f.cover:4: sheet 2 appears twice");
    CHECK_THROWS_WITH(parse_presentation_file(base + "assign a = c@(1)\n", "f.cover"),
                      "f.cover:4: assign target `c` does not match dynamics (`b`)");
    CHECK_THROWS_WITH(
        parse_presentation_file("degree 2\nmarked a b c\ndynamics a>b b>a\n", "f.cover"),
        "f.cover:3: dynamics line missing `c`");
    CHECK_THROWS_WITH(
        parse_presentation_file("degree 2\nmarked a b c\ndynamics a>b b>a c>c a>b\n", "f.cover"),
        "f.cover:3: `a` mapped twice");
    CHECK_THROWS_WITH(parse_presentation_file("degree 2\ndegree 3\n", "f.cover"),
                      "f.cover:2: duplicate `degree` line");
    CHECK_THROWS_WITH(parse_presentation_file("flavor sour\n", "f.cover"),
                      "f.cover:1: unknown directive `flavor`");
    CHECK_THROWS_WITH(parse_presentation_file("degree 2\ndynamics a>b\n", "f.cover"),
                      "f.cover:2: `dynamics` before `marked`");
    CHECK_THROWS_WITH(parse_presentation_file(base + "multicurve\ng1 g5\n", "f.cover"),
                      "f.cover:5: word letter g5 out of range for 3 marked points");
    CHECK_THROWS_WITH(parse_presentation_file("multicurve\n", "f.cover"),
                      "f.cover:1: `multicurve` before `marked`");
}

TEST_CASE("files survive a disk round trip") {
    auto P = fixtures::basilica();
    std::string path = "io_roundtrip_tmp.cover";
    save_presentation(P, path);
    auto Q = load_presentation(path);
    CHECK(presentation_text(Q) == presentation_text(P));
    std::remove(path.c_str());
    CHECK_THROWS_WITH(load_presentation("io_roundtrip_tmp.cover"),
                      "cannot open `io_roundtrip_tmp.cover`");
}

TEST_CASE("analysis reports serialize with stable keys") {
    auto P = fixtures::swapping_pair();
    Multicurve G = Multicurve::create({fixtures::cls(P, "g1 g2"), fixtures::cls(P, "g3 g4")},
                                      P.marked);
    auto a = analyze_multicurve(P, G);
    auto j = nlohmann::json::parse(report_json(a));

    CHECK(j["matrix"]["labels"] == nlohmann::json({"g1 g2", "g3 g4"}));
    CHECK(j["matrix"]["entries"][0][1] == "1");
    CHECK(j["matrix"]["entries"][0][0] == "0");
    CHECK(j["lambda_lower"] == "1");
    CHECK(j["lambda_upper"] == "1");
    CHECK(j["decision"] == "lambda >= 1");
    CHECK(j["irreducible"] == true);
    REQUIRE(j["levy_cycles"].size() == 1);
    CHECK(j["levy_cycles"][0]["members"] == nlohmann::json({0, 1}));
    CHECK(j["levy_cycles"][0]["classification"] == "plain");
    CHECK(j["case"].is_null());
    CHECK(j["case_error"] == "precondition failed: degree is not 3");
    CHECK(j["verdict"].is_null());
    CHECK(j["verdict_error"] == "precondition failed: presentation is invalid");
    CHECK(j["eigenvalue_certificate"]["witness"] == nlohmann::json({"1", "1"}));
    CHECK(j["sweep"]["confirmed"] == true);
    REQUIRE(j["sweep"]["blocks"].size() == 1);
    CHECK(j["sweep"]["blocks"][0]["hamiltonian_levy"] == true);
    CHECK(j["sweep"]["blocks"][0]["decision"] == "lambda >= 1");
    CHECK(j["structural_checks"].is_null());
}
