#pragma once

#include <map>
#include <string>
#include <vector>

#include "hlf/coeff.hpp"

namespace hlf {

// A finite Laurent polynomial in X with exact Gaussian-rational
// coefficients. This is the value domain of every measure and integral
// the engine produces: infinite series never appear at finite
// truncation, so the finite support is not a restriction.
//
// Invariant: no stored coefficient is zero; iteration order is
// ascending X-exponent, which fixes the canonical rendering.
class LaurentX {
public:
    LaurentX() = default;
    LaurentX(int constant) { set(0, Coeff(constant)); }   // NOLINT(google-explicit-constructor)
    LaurentX(Coeff constant) { set(0, std::move(constant)); } // NOLINT(google-explicit-constructor)

    static LaurentX zero() { return LaurentX(); }
    static LaurentX one() { return LaurentX(1); }
    static LaurentX monomial(int x_exp, Coeff c) {
        LaurentX r;
        r.set(x_exp, std::move(c));
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Coeff>& terms() const { return terms_; }

    // Coefficient of X^k (zero if absent).
    Coeff coefficient(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Coeff() : it->second;
    }

    // Lowest/highest stored exponent; invalid on zero.
    int min_exp() const;
    int max_exp() const;

    LaurentX operator-() const;
    LaurentX& operator+=(const LaurentX& o);
    LaurentX& operator-=(const LaurentX& o);
    friend LaurentX operator+(LaurentX a, const LaurentX& b) { return a += b; }
    friend LaurentX operator-(LaurentX a, const LaurentX& b) { return a -= b; }
    friend LaurentX operator*(const LaurentX& a, const LaurentX& b);
    LaurentX& operator*=(const LaurentX& o) { return *this = *this * o; }

    friend bool operator==(const LaurentX& a, const LaurentX& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentX& a, const LaurentX& b) { return !(a == b); }

    LaurentX scaled(const Coeff& c) const;
    // Multiplication by X^k.
    LaurentX shifted(int k) const;

private:
    void set(int k, Coeff c) {
        if (!c.is_zero()) terms_[k] = std::move(c);
    }

    std::map<int, Coeff> terms_;
};

inline LaurentX lx_add(const LaurentX& a, const LaurentX& b) { return a + b; }
inline LaurentX lx_mul(const LaurentX& a, const LaurentX& b) { return a * b; }

// The image of |.| on F^x: the value q^{-q_exp} * X^{x_exp}. Kept as an
// exponent pair so that products are exponent additions and the q->value
// embedding can be applied late.
struct Monomial {
    int x_exp = 0;
    int q_exp = 0;

    friend Monomial operator*(Monomial a, Monomial b) {
        return Monomial{a.x_exp + b.x_exp, a.q_exp + b.q_exp};
    }
    Monomial inverse() const { return Monomial{-x_exp, -q_exp}; }
    Monomial pow(int e) const { return Monomial{x_exp * e, q_exp * e}; }
    friend bool operator==(Monomial a, Monomial b) {
        return a.x_exp == b.x_exp && a.q_exp == b.q_exp;
    }

    LaurentX to_laurent(unsigned q) const {
        return LaurentX::monomial(x_exp, Coeff(rat_pow(q, -q_exp)));
    }
};

// A finite indexed family of values together with a declared lower
// bound on X-exponents. Summation makes the absolute-convergence
// discipline mechanical: any member reaching below the floor is a hard
// error, everything else sums exactly.
struct GuardedFamily {
    int floor = 0;
    std::vector<LaurentX> items;

    void add(LaurentX v) { items.push_back(std::move(v)); }
};

LaurentX lx_guarded_sum(const GuardedFamily& fam);

// Canonical ascending-exponent rendering, e.g. "1/2", "(1/4)*X",
// "X^-1 + X". Deterministic; parse(render(v)) == v.
std::string lx_render(const LaurentX& v);
LaurentX lx_parse(const std::string& text);

} // namespace hlf
