#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ratlink {

// Integer Laurent polynomial in a single variable A.  Exponents may be
// negative; zero coefficients are never stored, so equality is structural.
class LaurentPoly {
public:
    using Exp = long long;
    using Coef = long long;

    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }

    static LaurentPoly one() { return monomial(1, 0); }

    static LaurentPoly monomial(Coef c, Exp e) {
        LaurentPoly p;
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    // Kauffman loop value -A^2 - A^-2.
    static LaurentPoly circle() {
        LaurentPoly p;
        p.terms_[2] = -1;
        p.terms_[-2] = -1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    Coef coefficient(Exp e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? 0 : it->second;
    }

    const std::map<Exp, Coef>& terms() const { return terms_; }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, mul_checked(ca, cb));
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    // Multiply by c * A^e.
    LaurentPoly shifted(Coef c, Exp e) const {
        LaurentPoly r;
        for (const auto& [ex, co] : terms_) r.add_term(ex + e, mul_checked(co, c));
        return r;
    }

    // Substitute A -> A^-1 (the bracket of the mirror diagram).
    LaurentPoly mirrored() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }

    // (-A^3)^k, k may be negative.
    static LaurentPoly writhe_factor(long long k) {
        Coef sign = (k % 2 == 0) ? 1 : -1;
        return monomial(sign, 3 * k);
    }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // Highest power first.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Coef c = it->second;
            Exp e = it->first;
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            Coef ac = c < 0 ? -c : c;
            if (ac != 1 || e == 0) os << ac;
            if (e != 0) {
                os << "A";
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

private:
    static Coef mul_checked(Coef a, Coef b) {
        Coef r;
        if (__builtin_mul_overflow(a, b, &r))
            throw std::overflow_error("LaurentPoly: coefficient overflow");
        return r;
    }

    void add_term(Exp e, Coef c) {
        if (c == 0) return;
        Coef& slot = terms_[e];
        if (__builtin_add_overflow(slot, c, &slot))
            throw std::overflow_error("LaurentPoly: coefficient overflow");
        if (slot == 0) terms_.erase(e);
    }

    std::map<Exp, Coef> terms_;
};

}  // namespace ratlink
