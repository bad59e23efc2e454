#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "hlf/errors.hpp"

namespace hlf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int ipow(Int base, unsigned exp);

// q^e for integer e (possibly negative), as an exact rational.
Rat rat_pow(unsigned q, int e);

// A Gaussian rational a + b*i. All coefficient arithmetic in the engine
// is exact; values arising from characteristic functions stay in the
// rational subfield (b = 0).
class Coeff {
public:
    Coeff() = default;
    Coeff(int n) : re_(n) {}                       // NOLINT(google-explicit-constructor)
    Coeff(Rat re) : re_(std::move(re)) {}          // NOLINT(google-explicit-constructor)
    Coeff(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static Coeff i() { return Coeff(Rat(0), Rat(1)); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }

    Coeff operator-() const { return Coeff(-re_, -im_); }
    Coeff& operator+=(const Coeff& o) { re_ += o.re_; im_ += o.im_; return *this; }
    Coeff& operator-=(const Coeff& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    Coeff& operator*=(const Coeff& o) {
        Rat r = re_ * o.re_ - im_ * o.im_;
        Rat i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Coeff& operator/=(const Coeff& o) {
        if (o.is_zero()) throw DivisionByZero("coefficient division by zero");
        Rat n = o.re_ * o.re_ + o.im_ * o.im_;
        Rat r = (re_ * o.re_ + im_ * o.im_) / n;
        Rat i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
    friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
    friend Coeff operator*(Coeff a, const Coeff& b) { return a *= b; }
    friend Coeff operator/(Coeff a, const Coeff& b) { return a /= b; }
    friend bool operator==(const Coeff& a, const Coeff& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

    // Canonical text form: "p", "p/q", or "(re+im*i)" for proper
    // Gaussian values. Used by the LaurentX renderer.
    std::string str() const;

private:
    Rat re_{0};
    Rat im_{0};
};

} // namespace hlf
