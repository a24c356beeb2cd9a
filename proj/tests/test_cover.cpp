#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "thurston/cover.hpp"

using namespace thurston;
using namespace fixtures;

namespace {

const ValidationItem& item(const ValidationReport& rep, const std::string& name) {
    for (const auto& it : rep.items)
        if (it.name == name) return it;
    throw std::runtime_error("missing validation item " + name);
}

} // namespace

TEST_CASE("permutation cycles, inverse, composition") {
    Permutation p = perm({2, 3, 1, 5, 4});
    auto cs = p.cycles();
    REQUIRE(cs.size() == 2);
    CHECK(cs[0] == std::vector<int>{1, 2, 3});
    CHECK(cs[1] == std::vector<int>{4, 5});
    CHECK(p.inverse().img == std::vector<int>{3, 1, 2, 5, 4});
    CHECK(compose(p, p.inverse()).is_identity());

    // compose(a,b) applies b first.
    Permutation a = perm({2, 1, 3});
    Permutation b = perm({1, 3, 2});
    CHECK(compose(a, b)(3) == a(b(3)));
    CHECK(compose(a, b).img == std::vector<int>{2, 3, 1});
}

TEST_CASE("last permutation is derived from the sphere relation") {
    auto P = cubic_power_blank();
    CHECK(P.sigma(2).img == std::vector<int>{3, 1, 2});
    CHECK(wreath_apply(P, derived_last_word(P.n())).perm == P.sigma(2));

    auto Q = mating_base();
    CHECK(Q.sigma(4).is_identity());
    CHECK(wreath_apply(Q, derived_last_word(Q.n())).perm == Q.sigma(4));
}

TEST_CASE("validation accepts consistent sheet data") {
    for (const auto& P : {cubic_power_blank(), cubic_power(), basilica(),
                          mating_base(), chebyshev_like(), rabbit_like()}) {
        auto rep = validate_presentation(P);
        CHECK(rep.pass());
        CHECK(rep.items.size() == 5);
    }
}

TEST_CASE("validation reports each failed invariant") {
    // Identity fiber where a 3-cycle was promised: no branching at all.
    auto P = make_cover(3, labels(2), {1, 2}, {perm({1, 2, 3})},
                        trivial_rows(1, 3), {{1, 2, 3}, {1, 3, 2}});
    auto rep = validate_presentation(P);
    CHECK(!rep.pass());
    CHECK(item(rep, "shape").pass);
    CHECK(!item(rep, "riemann-hurwitz").pass);
    CHECK(item(rep, "riemann-hurwitz").detail.find("expected 4") != std::string::npos);
    CHECK(!item(rep, "transitivity").pass);
    CHECK(!item(rep, "postcritical").pass);
    CHECK(!item(rep, "assignments").pass);
}

TEST_CASE("validation rejects doubly assigned cycles") {
    auto P = make_cover(3, labels(2), {1, 1}, {perm({2, 3, 1})},
                        trivial_rows(1, 3), {{1, 2, 3}, {1, 2, 3}});
    auto rep = validate_presentation(P);
    CHECK(item(rep, "shape").pass);
    CHECK(!item(rep, "assignments").pass);
    CHECK(item(rep, "assignments").detail.find("more than one") != std::string::npos);
}

TEST_CASE("extra marked points need the relaxed option and a fixed point") {
    auto P = four_transpositions();
    CHECK(!validate_presentation(P).pass());
    CHECK(!item(validate_presentation(P), "postcritical").pass);
    CHECK(validate_presentation(P, {true}).pass());

    // Send the spare point somewhere non-fixed: even the relaxed check fails.
    auto Q = make_cover(3, labels(5), {2, 1, 4, 3, 1},
                        {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1}), perm({3, 2, 1})},
                        trivial_rows(4, 3), {{1, 2}, {1, 2}, {1, 3}, {1, 3}, {3}});
    CHECK(!validate_presentation(Q, {true}).pass());
    CHECK(!item(validate_presentation(Q, {true}), "postcritical").pass);
}

TEST_CASE("make_cover rejects malformed input outright") {
    CHECK_THROWS_AS(make_cover(1, labels(2), {1, 2}, {}, {}, {{1}, {1}}), error);
    CHECK_THROWS_AS(make_cover(3, labels(2), {1, 2}, {perm({1, 1, 3})},
                               trivial_rows(1, 3), {{1, 2, 3}, {1, 3, 2}}),
                    error);
    auto rows = trivial_rows(1, 3);
    rows[0][0] = W("g2"); // only g1 exists with two marked points
    CHECK_THROWS_AS(make_cover(3, labels(2), {1, 2}, {perm({2, 3, 1})},
                               rows, {{1, 2, 3}, {1, 3, 2}}),
                    error);
    CHECK_THROWS_AS(make_cover(3, labels(2), {1, 2}, {perm({2, 3, 1})},
                               trivial_rows(1, 3), {{1, 2, 3}, {4}}),
                    error);
}

TEST_CASE("restriction products detect the honest cover") {
    CHECK(detail::peripheral_condition_failures(cubic_power()).empty());
    CHECK(detail::peripheral_condition_failures(basilica()).empty());
    CHECK(detail::peripheral_condition_failures(mating_base()).empty());

    auto bad = detail::peripheral_condition_failures(cubic_power_blank());
    REQUIRE(!bad.empty());
    CHECK(bad.front().find("not conjugate") != std::string::npos);
}

TEST_CASE("cycle products follow the sheet traversal") {
    auto P = cubic_power();
    CHECK(detail::cycle_product(P, 1, {1, 2, 3}) == W("g1"));
    CHECK(detail::cycle_product(P, 1, {2, 3, 1}) == W("g1"));
    CHECK(detail::cycle_product(P, 2, {1, 3, 2}) == W("G1"));
}

TEST_CASE("wreath action is a homomorphism") {
    auto P = mating_base();
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 300; ++trial) {
        Word u = rand_word(rng, P.n() - 1, trial % 7);
        Word v = rand_word(rng, P.n() - 1, (trial * 5) % 9);
        auto a = wreath_apply(P, u);
        auto b = wreath_apply(P, v);
        auto ab = wreath_apply(P, u * v);
        CHECK(ab.perm == compose(a.perm, b.perm));
        for (int k = 1; k <= P.degree; ++k) {
            Word expect = free_reduce(a.sheets[static_cast<size_t>(b.perm(k) - 1)] *
                                      b.sheets[static_cast<size_t>(k - 1)]);
            CHECK(ab.sheets[static_cast<size_t>(k - 1)] == expect);
        }
        auto e = wreath_apply(P, u * u.inverse());
        CHECK(e.perm.is_identity());
        for (const auto& s : e.sheets) CHECK(s.empty());
    }
}

TEST_CASE("peripheral classes lift through the assignment table") {
    auto P = cubic_power_blank();
    // One cycle, assigned: single full-degree peripheral component.
    auto lifts = lift_curve(P, cls(P, "g1"));
    REQUIRE(lifts.size() == 1);
    CHECK(lifts[0].kind == LiftKind::Peripheral);
    CHECK(lifts[0].degree == 3);
    CHECK(lifts[0].peripheral_at == 1);
    CHECK(lifts[0].word == W("g1"));

    // With two marked points the classes around p1 and p2 coincide.
    auto lifts2 = lift_curve(P, cls(P, "G1"));
    REQUIRE(lifts2.size() == 1);
    CHECK(lifts2[0].kind == LiftKind::Peripheral);
    CHECK(lifts2[0].peripheral_at == 1);
    CHECK(cls(P, "G1") == cls(P, "g1"));

    auto B = basilica();
    auto around_pair = lift_curve(B, cls(B, "g1 g2")); // peripheral at p3
    REQUIRE(around_pair.size() == 1);
    CHECK(around_pair[0].kind == LiftKind::Peripheral);
    CHECK(around_pair[0].peripheral_at == 3);
    CHECK(around_pair[0].degree == 2);

    // Over p1 sits the critical point p2 alone.
    auto around_p1 = lift_curve(B, cls(B, "g1"));
    REQUIRE(around_p1.size() == 1);
    CHECK(around_p1[0].kind == LiftKind::Peripheral);
    CHECK(around_p1[0].peripheral_at == 2);
    CHECK(around_p1[0].degree == 2);

    // Over p2 sit p1 and one unmarked point.
    auto around_p2 = lift_curve(B, cls(B, "g2"));
    REQUIRE(around_p2.size() == 2);
    int trivial = 0, periph = 0;
    for (const auto& c : around_p2) {
        if (c.kind == LiftKind::Trivial) ++trivial;
        if (c.kind == LiftKind::Peripheral) {
            ++periph;
            CHECK(c.peripheral_at == 1);
            CHECK(c.degree == 1);
        }
    }
    CHECK(trivial == 1);
    CHECK(periph == 1);
}

TEST_CASE("essential lifts follow the sheet words") {
    auto P = mating_base();

    auto eq = lift_curve(P, cls(P, "g1 g2"));
    REQUIRE(eq.size() == 1);
    CHECK(eq[0].kind == LiftKind::Essential);
    CHECK(eq[0].degree == 2);
    REQUIRE(eq[0].cls.has_value());
    CHECK(*eq[0].cls == cls(P, "g1 g2"));

    auto polar = lift_curve(P, cls(P, "g1 g3"));
    REQUIRE(polar.size() == 2);
    CHECK(polar[0].kind == LiftKind::Peripheral);
    CHECK(polar[0].peripheral_at == 1);
    CHECK(polar[0].degree == 1);
    CHECK(polar[1].kind == LiftKind::Peripheral);
    CHECK(polar[1].peripheral_at == 3);
    CHECK(polar[1].degree == 1);
}

TEST_CASE("disk preimage counts for the quadratic examples") {
    auto P = mating_base();

    auto eq = disk_preimage_topology(P, cls(P, "g1 g2"), {1, 2});
    CHECK(eq.total_chi == 1);
    CHECK(eq.component_count == 1);
    CHECK(eq.all_disks);
    CHECK(eq.multiset_forced);
    CHECK(eq.component_boundary_multiset == std::vector<int>{1});

    auto eq_other = disk_preimage_topology(P, cls(P, "g1 g2"), {3, 4});
    CHECK(eq_other.total_chi == 1);
    CHECK(eq_other.component_count == 1);
    CHECK(eq_other.all_disks);

    auto ann = disk_preimage_topology(P, cls(P, "g1 g3"), {1, 3});
    CHECK(ann.total_chi == 0);
    CHECK(ann.boundary_lifts.size() == 2);
    CHECK(ann.component_count == 1);
    CHECK(!ann.all_disks);
    CHECK(ann.multiset_forced);
    CHECK(ann.component_boundary_multiset == std::vector<int>{2});

    CHECK_THROWS_AS(disk_preimage_topology(P, cls(P, "g1 g2"), {1, 3}), error);
}

TEST_CASE("disk preimage counts across branch value configurations") {
    auto P = four_transpositions();

    // Two branch values whose transpositions cancel: a disk and an annulus.
    auto two_id = disk_preimage_topology(P, cls(P, "g1 g2"), {1, 2});
    CHECK(two_id.total_chi == 1);
    CHECK(two_id.boundary_lifts.size() == 3);
    CHECK(two_id.component_count == 2);
    CHECK(!two_id.all_disks);
    CHECK(two_id.multiset_forced);
    CHECK(two_id.component_boundary_multiset == std::vector<int>{2, 1});

    // Two branch values composing to a 3-cycle: one disk of full degree.
    auto two_cyc = disk_preimage_topology(P, cls(P, "g1 g3"), {1, 3});
    CHECK(two_cyc.total_chi == 1);
    CHECK(two_cyc.boundary_lifts.size() == 1);
    CHECK(two_cyc.boundary_lifts[0].degree == 3);
    CHECK(two_cyc.component_count == 1);
    CHECK(two_cyc.all_disks);

    // Three branch values: a single annulus, boundary degrees 2 and 1.
    auto three = disk_preimage_topology(P, cls(P, "g1 g2 g3"), {1, 2, 3});
    CHECK(three.total_chi == 0);
    CHECK(three.boundary_lifts.size() == 2);
    CHECK(three.component_count == 1);
    CHECK(!three.all_disks);
    std::vector<int> degs{three.boundary_lifts[0].degree, three.boundary_lifts[1].degree};
    std::sort(degs.begin(), degs.end());
    CHECK(degs == std::vector<int>{1, 2});

    // All four: a pair of pants.
    auto four = disk_preimage_topology(P, cls(P, "g1 g2 g3 g4"), {1, 2, 3, 4});
    CHECK(four.total_chi == -1);
    CHECK(four.boundary_lifts.size() == 3);
    CHECK(four.component_count == 1);
    CHECK(!four.all_disks);
    CHECK(four.component_boundary_multiset == std::vector<int>{3});

    // Complementary side of a two-value curve, spare marked point included.
    auto comp = disk_preimage_topology(P, cls(P, "g1 g2"), {3, 4, 5});
    CHECK(comp.total_chi == 1);
    CHECK(comp.component_count == 2);
}

TEST_CASE("orbifold weights") {
    auto sig = orbifold_signature(cubic_power());
    REQUIRE(sig.nu.size() == 2);
    CHECK(!sig.nu[0].has_value());
    CHECK(!sig.nu[1].has_value());
    CHECK(sig.chi_orb == 0);
    CHECK(!sig.hyperbolic());

    auto bas = orbifold_signature(basilica());
    for (const auto& v : bas.nu) CHECK(!v.has_value());
    CHECK(bas.chi_orb == -1);
    CHECK(bas.hyperbolic());

    auto cheb = orbifold_signature(chebyshev_like());
    REQUIRE(cheb.nu.size() == 3);
    CHECK(cheb.nu[0] == 2);
    CHECK(cheb.nu[1] == 2);
    CHECK(!cheb.nu[2].has_value());
    CHECK(cheb.chi_orb == 0);

    auto rab = orbifold_signature(rabbit_like());
    for (const auto& v : rab.nu) CHECK(!v.has_value());
    CHECK(rab.chi_orb == -2);
}

TEST_CASE("critical point bookkeeping") {
    auto Z = cubic_power();
    auto fc = fixed_critical_points(Z);
    REQUIRE(fc.size() == 2);
    CHECK(fc[0] == std::pair<int, int>{1, 3});
    CHECK(fc[1] == std::pair<int, int>{2, 3});
    CHECK(free_critical_values(Z).empty());
    CHECK(critical_values(Z) == std::vector<int>{1, 2});
    CHECK(postcritical_set(Z) == std::vector<int>{1, 2});

    auto M = mating_base();
    CHECK(fixed_critical_points(M).empty());
    CHECK(free_critical_values(M) == std::vector<int>{1, 3});
    CHECK(critical_values(M) == std::vector<int>{1, 3});
    CHECK(postcritical_set(M) == std::vector<int>{1, 2, 3, 4});

    auto C = chebyshev_like();
    auto cfc = fixed_critical_points(C);
    REQUIRE(cfc.size() == 1);
    CHECK(cfc[0] == std::pair<int, int>{3, 2});
    CHECK(free_critical_values(C) == std::vector<int>{1});
}
