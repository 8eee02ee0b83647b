#include "doctest.h"
#include "ratlink/lift.hpp"
#include "ratlink/tangle.hpp"

using namespace ratlink;

TEST_CASE("baseline lifts use 4p+4 sticks with exactly 4 z-sticks") {
    for (auto [p, q] : {std::pair<long long, long long>{2, 1}, {3, 1}, {5, 2}}) {
        LiftedLink ll = lift_baseline(build_circuit(p, q));
        StickCensus c = ll.census();
        CHECK(c.total() == 4 * p + 4);
        CHECK(c.z == 4);
        CHECK(validate_embedding(ll.link).ok);
    }
}

TEST_CASE("corner reduction of 3/1 replaces the documented path") {
    LiftedLink base = lift_baseline(build_circuit(3, 1));
    auto has = [](const LiftedLink& ll, Point3 a, Point3 b) {
        Stick want = Stick(a, b).normalized();
        for (const Stick& s : ll.link.sticks())
            if (s.normalized() == want) return true;
        return false;
    };
    CHECK(has(base, {3, 3, 0}, {3, 3, 1}));
    CHECK(has(base, {3, 3, 1}, {0, 3, 1}));
    CHECK(has(base, {0, 3, 1}, {0, 3, 0}));
    CHECK(has(base, {0, 3, 0}, {0, -2, 0}));
    CHECK(has(base, {0, -2, 0}, {2, -2, 0}));

    LiftedLink red = reduce_corner(base);
    CHECK(red.census().total() == 4 * 3 + 3);
    CHECK(red.census().z == 4);
    CHECK(has(red, {3, 3, 0}, {3, 3, 2}));
    CHECK(has(red, {3, 3, 2}, {3, -2, 2}));
    CHECK(has(red, {3, -2, 2}, {2, -2, 2}));
    CHECK(has(red, {2, -2, 2}, {2, -2, 0}));
    CHECK_FALSE(has(red, {3, 3, 0}, {3, 3, 1}));
}

TEST_CASE("stage totals and validity across the sweep") {
    for (long long p = 2; p <= 30; ++p) {
        for (long long q = 1; q < p; ++q) {
            if (gcd_ll(p, q) != 1) continue;
            BuildStages st = build_all_stages(p, q);
            for (const LiftedLink* ll :
                 {&st.baseline, &st.corner_reduced, &st.final_link}) {
                StickCensus c = ll->census();
                REQUIRE(c.z == 4);
                REQUIRE(c.total() == expected_total(ll->stage, p, q, ll->two_component));
                REQUIRE(validate_embedding(ll->link).ok);
            }
            REQUIRE(st.final_link.two_component == (p % 2 == 0));
            REQUIRE(st.final_link.component_count() == (p % 2 == 0 ? 2 : 1));
        }
    }
}

TEST_CASE("known stick counts for small links") {
    CHECK(build_lattice_link(3, 1).census().total() == 12);
    CHECK(build_lattice_link(5, 1).census().total() == 16);
    CHECK(build_lattice_link(4, 1).census().total() == 13);
    CHECK(build_lattice_link(5, 2).census().total() == 16);
    CHECK(build_lattice_link(17, 7).census().total() == 2 * 17 + 6);
    CHECK(build_lattice_link(17, 7).census().z == 4);
}

TEST_CASE("the 2/1 link is the one degenerate pair") {
    // For p = 2q the corner detour's middle stick has zero length, so the
    // reduction removes two sticks instead of one and the final embedding has
    // 8 sticks.  No 2-component lattice link can have 9 sticks at all: a
    // closed loop avoiding one axis alternates and is even, and an odd loop
    // needs all three axes with at least 2+2+3 = 7 sticks, so two components
    // need 4+7 = 11 sticks for an odd total.  8 equals the known lattice
    // stick number of this link.
    BuildStages st = build_all_stages(2, 1);
    CHECK(st.baseline.census().total() == 12);
    CHECK(st.corner_reduced.census().total() == 10);
    CHECK(st.final_link.census().total() == 8);
    CHECK(st.final_link.census().z == 4);
    CHECK(st.final_link.component_count() == 2);
}

TEST_CASE("stage transitions are enforced") {
    BuildStages st = build_all_stages(3, 1);
    CHECK_THROWS_AS(reduce_corner(st.corner_reduced), ConstructionError);
    CHECK_THROWS_AS(push_down_p2(st.baseline), ConstructionError);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(build_lattice_link(4, 2), std::domain_error);
    CHECK_THROWS_AS(build_lattice_link(1, 1), std::domain_error);
    CHECK_THROWS_AS(build_lattice_link(3, 5), std::domain_error);
}

TEST_CASE("canonicalize leaves pipeline output unchanged") {
    LiftedLink ll = build_lattice_link(5, 2);
    LatticeLink re = canonicalize(ll.link.loops);
    CHECK(stick_census(re) == ll.census());
}
