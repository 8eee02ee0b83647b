#include "ratlink/tangle.hpp"

#include <sstream>

namespace ratlink {

namespace {

long long add_checked(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("tangle: integer overflow");
    return r;
}

long long mul_checked(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("tangle: integer overflow");
    return r;
}

}  // namespace

long long gcd_ll(long long a, long long b) {
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

Fraction::Fraction(long long num, long long den) : p(num), q(den) {
    if (p < 1 || q < 1) throw std::domain_error("Fraction: p and q must be positive");
    if (gcd_ll(p, q) != 1) throw std::domain_error("Fraction: p and q must be coprime");
}

ConwayWord::ConwayWord(std::vector<long long> a) : entries(std::move(a)) {
    if (entries.empty()) throw std::domain_error("ConwayWord: at least one entry required");
    for (long long e : entries)
        if (e < 1) throw std::domain_error("ConwayWord: entries must be positive");
}

PillowForm::PillowForm(long long t_, long long s_) : t(t_), s(s_) {
    if (t < 0 || s < 0) throw std::domain_error("PillowForm: gap counts must be non-negative");
    if (t == 0 && s == 0) throw std::domain_error("PillowForm: (0,0) is not a tangle");
    if (gcd_ll(t, s) != 1) throw std::domain_error("PillowForm: gap counts must be coprime");
}

Fraction evaluate_conway(const ConwayWord& word) {
    if (word.entries.empty()) throw std::domain_error("evaluate_conway: empty word");
    // Innermost entry first: value = a_n + 1/(a_{n-1} + 1/(...)).
    long long num = word.entries.front();
    long long den = 1;
    for (std::size_t i = 1; i < word.entries.size(); ++i) {
        long long a = word.entries[i];
        long long new_num = add_checked(mul_checked(a, num), den);
        den = num;
        num = new_num;
    }
    long long g = gcd_ll(num, den);
    return Fraction(num / g, den / g);
}

ConwayWord expand_fraction(const Fraction& frac) {
    if (frac.p <= frac.q)
        throw std::domain_error("expand_fraction: requires p > q >= 1");
    // Euclidean quotients give the outermost entry first; the word stores the
    // innermost entry first, so reverse at the end.
    std::vector<long long> quotients;
    long long a = frac.p, b = frac.q;
    while (b != 0) {
        quotients.push_back(a / b);
        long long r = a % b;
        a = b;
        b = r;
    }
    std::vector<long long> word(quotients.rbegin(), quotients.rend());
    // Normalize to odd length using [a1, rest] = [1, a1-1, rest] (or its
    // inverse when a1 = 1), so the recursion from (0,1), which starts with a
    // horizontal twist region, also ends with a horizontal one.
    if (word.size() % 2 == 0) {
        if (word[0] >= 2) {
            word[0] -= 1;
            word.insert(word.begin(), 1);
        } else {
            // word[0] == 1: fold it into the next entry.
            word[1] += 1;
            word.erase(word.begin());
        }
    }
    ConwayWord result{word};
    if (evaluate_conway(result) != frac)
        throw std::logic_error("expand_fraction: round trip failed");
    return result;
}

PillowForm twist_vertical(const PillowForm& form) {
    return PillowForm(form.t, add_checked(form.t, form.s));
}

PillowForm twist_horizontal(const PillowForm& form) {
    return PillowForm(add_checked(form.t, form.s), form.s);
}

PillowForm pillow_of_word(const ConwayWord& word) {
    auto trace = pillow_trace(word);
    return trace.back();
}

std::vector<PillowForm> pillow_trace(const ConwayWord& word) {
    if (word.entries.empty()) throw std::domain_error("pillow_trace: empty word");
    std::vector<PillowForm> trace;
    PillowForm form(0, 1);
    trace.push_back(form);
    bool horizontal = true;
    for (long long count : word.entries) {
        for (long long i = 0; i < count; ++i) {
            form = horizontal ? twist_horizontal(form) : twist_vertical(form);
            trace.push_back(form);
        }
        horizontal = !horizontal;
    }
    return trace;
}

std::string to_string(const Fraction& f) {
    return std::to_string(f.p) + "/" + std::to_string(f.q);
}

std::string to_string(const ConwayWord& w) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < w.entries.size(); ++i) {
        if (i) os << ",";
        os << w.entries[i];
    }
    os << "]";
    return os.str();
}

std::string to_string(const PillowForm& f) {
    return "(" + std::to_string(f.t) + "," + std::to_string(f.s) + ")";
}

}  // namespace ratlink
