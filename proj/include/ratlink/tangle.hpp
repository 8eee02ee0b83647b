#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratlink {

// All tangle arithmetic is exact in 64-bit integers.  Inputs past the
// documented ceiling (numerators around 10^6 are far below it) raise
// std::overflow_error instead of wrapping.

// A coprime positive pair p/q identifying a rational tangle or link.
struct Fraction {
    long long p = 1;
    long long q = 1;

    Fraction() = default;
    Fraction(long long num, long long den);

    bool operator==(const Fraction&) const = default;
};

// Conway notation: positive twist counts a1,...,an.
struct ConwayWord {
    std::vector<long long> entries;

    ConwayWord() = default;
    explicit ConwayWord(std::vector<long long> a);

    bool operator==(const ConwayWord&) const = default;
};

// Pillowcase description of a rational tangle: t gaps crossed along the
// top/bottom of the pillow, s gaps along each side.
struct PillowForm {
    long long t = 0;
    long long s = 1;

    PillowForm() = default;
    PillowForm(long long t_, long long s_);

    bool operator==(const PillowForm&) const = default;
};

long long gcd_ll(long long a, long long b);

// Continued-fraction value a_n + 1/(a_{n-1} + 1/(... + 1/a_1)), reduced.
Fraction evaluate_conway(const ConwayWord& word);

// Positive continued-fraction expansion of p/q with p > q >= 1.  The word is
// normalized to odd length (it ends on a top-level horizontal twist region),
// which makes pillow_of_word(expand_fraction(f)) reproduce f exactly.
ConwayWord expand_fraction(const Fraction& frac);

// One extra crossing at the bottom of the pillow: (t,s) -> (t, t+s).
PillowForm twist_vertical(const PillowForm& form);

// One extra crossing at the side of the pillow: (t,s) -> (t+s, s).
PillowForm twist_horizontal(const PillowForm& form);

// Run the twist recursion from the trivial form (0,1): a1 horizontal twists,
// then a2 vertical, alternating through a_n.
PillowForm pillow_of_word(const ConwayWord& word);

// Step-by-step (t,s) trace of pillow_of_word, starting at (0,1); used by the
// CLI and handy in tests.
std::vector<PillowForm> pillow_trace(const ConwayWord& word);

std::string to_string(const Fraction& f);
std::string to_string(const ConwayWord& w);
std::string to_string(const PillowForm& f);

}  // namespace ratlink
