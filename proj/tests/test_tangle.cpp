#include <random>

#include "doctest.h"
#include "ratlink/tangle.hpp"

using namespace ratlink;

namespace {

// Independent expansion oracle: peel twists off the pillowcase form by
// subtraction until the trivial form is reached.  The runs come out
// outermost-first, so the word is their reversal.
ConwayWord expand_by_untwisting(const Fraction& f) {
    long long t = f.p, s = f.q;
    std::vector<long long> runs;
    bool horizontal = true;
    while (!(t == 0 && s == 1)) {
        long long count = 0;
        if (horizontal) {
            while (t >= s && !(t == 0 && s == 1)) {
                t -= s;
                ++count;
            }
        } else {
            while (s > t) {
                s -= t;
                ++count;
            }
        }
        REQUIRE(count >= 1);
        runs.push_back(count);
        horizontal = !horizontal;
    }
    std::reverse(runs.begin(), runs.end());
    return ConwayWord(runs);
}

}  // namespace

TEST_CASE("evaluate_conway on known words") {
    CHECK(evaluate_conway(ConwayWord({3})) == Fraction(3, 1));
    CHECK(evaluate_conway(ConwayWord({3, 2, 2})) == Fraction(17, 7));
    CHECK(evaluate_conway(ConwayWord({2, 2, 1})) == Fraction(7, 5));
    for (long long a = 1; a <= 9; ++a) CHECK(evaluate_conway(ConwayWord({a})) == Fraction(a, 1));
}

TEST_CASE("expand_fraction on known fractions") {
    CHECK(expand_fraction(Fraction(3, 1)) == ConwayWord({3}));
    CHECK(expand_fraction(Fraction(17, 7)) == ConwayWord({3, 2, 2}));
    CHECK(expand_fraction(Fraction(7, 5)) == ConwayWord({2, 2, 1}));
}

TEST_CASE("expand_fraction rejects p <= q") {
    CHECK_THROWS_AS(expand_fraction(Fraction(3, 4)), std::domain_error);
    CHECK_THROWS_AS(expand_fraction(Fraction(1, 1)), std::domain_error);
}

TEST_CASE("type invariants are enforced") {
    CHECK_THROWS_AS(Fraction(4, 2), std::domain_error);
    CHECK_THROWS_AS(Fraction(0, 1), std::domain_error);
    CHECK_THROWS_AS(ConwayWord({2, 0, 1}), std::domain_error);
    CHECK_THROWS_AS(ConwayWord(std::vector<long long>{}), std::domain_error);
    CHECK_THROWS_AS(PillowForm(0, 0), std::domain_error);
    CHECK_THROWS_AS(PillowForm(2, 4), std::domain_error);
}

TEST_CASE("twist operations") {
    CHECK(twist_vertical(PillowForm(0, 1)) == PillowForm(0, 1));  // fixed point
    CHECK(twist_vertical(PillowForm(3, 1)) == PillowForm(3, 4));
    CHECK(twist_vertical(PillowForm(3, 4)) == PillowForm(3, 7));
    CHECK(twist_horizontal(PillowForm(0, 1)) == PillowForm(1, 1));
    CHECK(twist_horizontal(PillowForm(3, 7)) == PillowForm(10, 7));
    CHECK(twist_horizontal(PillowForm(10, 7)) == PillowForm(17, 7));
}

TEST_CASE("pillow_of_word on known words") {
    CHECK(pillow_of_word(ConwayWord({3})) == PillowForm(3, 1));
    CHECK(pillow_of_word(ConwayWord({2, 2, 1})) == PillowForm(7, 5));
    CHECK(pillow_of_word(ConwayWord({3, 2, 2})) == PillowForm(17, 7));
}

TEST_CASE("pillow trace of 2,2,1 passes the documented forms") {
    auto trace = pillow_trace(ConwayWord({2, 2, 1}));
    REQUIRE(trace.size() == 6);
    CHECK(trace[0] == PillowForm(0, 1));
    CHECK(trace[2] == PillowForm(2, 1));
    CHECK(trace[4] == PillowForm(2, 5));
    CHECK(trace[5] == PillowForm(7, 5));
}

TEST_CASE("pillow form identity across all coprime pairs up to 200") {
    for (long long p = 2; p <= 200; ++p) {
        for (long long q = 1; q < p; ++q) {
            if (gcd_ll(p, q) != 1) continue;
            ConwayWord w = expand_fraction(Fraction(p, q));
            CHECK(w.entries.size() % 2 == 1);
            PillowForm form = pillow_of_word(w);
            REQUIRE(form.t == p);
            REQUIRE(form.s == q);
            REQUIRE(evaluate_conway(w) == Fraction(p, q));
        }
    }
}

TEST_CASE("subtraction oracle agrees with expand_fraction") {
    for (long long p = 2; p <= 200; ++p)
        for (long long q = 1; q < p; ++q) {
            if (gcd_ll(p, q) != 1) continue;
            REQUIRE(expand_by_untwisting(Fraction(p, q)) == expand_fraction(Fraction(p, q)));
        }
}

TEST_CASE("twists preserve coprimality for random words") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long long> entry(1, 6);
    std::uniform_int_distribution<int> len(1, 7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long long> entries;
        int n = len(rng);
        for (int i = 0; i < n; ++i) entries.push_back(entry(rng));
        // every intermediate form is validated by the PillowForm constructor
        auto trace = pillow_trace(ConwayWord(entries));
        for (const PillowForm& f : trace) REQUIRE(gcd_ll(f.t, f.s) == 1);
    }
}

TEST_CASE("checked arithmetic rejects overflow") {
    std::vector<long long> huge(80, 1000000);
    CHECK_THROWS_AS(evaluate_conway(ConwayWord(huge)), std::overflow_error);
}
