#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hlf/gf.hpp"
#include "hlf/laurent.hpp"

namespace hlf {

struct FieldConfig;
using FieldRef = std::shared_ptr<const FieldConfig>;

// Residue field size and truncation windows for the two series levels.
struct FieldConfig {
    unsigned q;
    int t1_prec;
    int t2_prec;
    GFPtr gf;

    static FieldRef make(unsigned q, int t1_prec = 12, int t2_prec = 12);
};

// An element of E = F_q((t1)), stored as a coefficient window starting
// at its valuation. `exact` means the element IS the stored polynomial
// (all later coefficients zero); otherwise coefficients are guaranteed
// correct on [val, val+coeffs.size()) and unknown beyond.
//
// Normal forms:
//   zero          : exact, coeffs empty
//   O(t1^k) bound : inexact, coeffs empty, val = k (valuation >= k, nothing known)
//   otherwise     : coeffs[0] != 0
class EElem {
public:
    explicit EElem(FieldRef f) : f_(std::move(f)), exact_(true) {}

    static EElem zero(FieldRef f) { return EElem(std::move(f)); }
    static EElem one(FieldRef f) { return from_gf(std::move(f), 1); }
    static EElem from_gf(FieldRef f, gf_t c);
    static EElem t1_pow(FieldRef f, int k);
    // coeffs[i] is the coefficient of t1^(val+i).
    static EElem from_coeffs(FieldRef f, int val, std::vector<gf_t> coeffs, bool exact = true);
    static EElem unknown(FieldRef f, int bound);

    const FieldRef& field() const { return f_; }
    bool exact() const { return exact_; }
    int val_bound() const { return val_; }
    const std::vector<gf_t>& coeffs() const { return coeffs_; }

    bool provably_zero() const { return exact_ && coeffs_.empty(); }
    bool provably_nonzero() const { return !coeffs_.empty(); } // leading stored coeff nonzero
    bool decided() const { return provably_zero() || provably_nonzero(); }

    // t1-valuation; element must be provably nonzero.
    int v1() const;
    // Exponent below which all further coefficients are known (INT_MAX for exact).
    int known_until() const;
    gf_t coeff_at(int e) const; // only valid for e < known_until()

    EElem operator-() const;
    friend EElem operator+(const EElem& a, const EElem& b);
    friend EElem operator-(const EElem& a, const EElem& b);
    friend EElem operator*(const EElem& a, const EElem& b);
    EElem inv() const;
    EElem shifted(int k) const; // * t1^k
    EElem pow(int e) const;

    // Structural equality (same window, same knowledge).
    friend bool operator==(const EElem& a, const EElem& b) {
        return a.val_ == b.val_ && a.exact_ == b.exact_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const EElem& a, const EElem& b) { return !(a == b); }
    // Agreement on the joint known window.
    bool agrees(const EElem& b) const;
    // True iff elements are provably equal as field elements (both exact).
    bool eq_exact(const EElem& b) const { return exact_ && b.exact_ && *this == b; }

    bool in_OE() const; // valuation >= 0; throws PrecisionExhausted if undecidable
    // Truncation to exponents < e (exact result: the polynomial part below e).
    EElem truncated_below(int e) const;
    // The part with exponents >= e.
    EElem tail_from(int e) const;
    // The known window reinterpreted as an exact polynomial (a guess to
    // be verified by the caller).
    EElem exactified() const;

    std::string str() const;

private:
    void normalize();

    FieldRef f_;
    int val_ = 0;
    std::vector<gf_t> coeffs_;
    bool exact_ = true;
};

// An element of F = E((t2)): a window of EElem coefficients starting at
// the t2-valuation, with the same exact/truncated discipline one level
// up. Coefficient EElems carry their own t1-windows.
class FElem {
public:
    explicit FElem(FieldRef f) : f_(std::move(f)), exact_(true) {}

    static FElem zero(FieldRef f) { return FElem(std::move(f)); }
    static FElem one(FieldRef f);
    static FElem from_e(EElem c); // c * t2^0
    static FElem t2_pow(FieldRef f, int k);
    static FElem t1_pow(FieldRef f, int k);
    // monomial c * t2^a (c at exponent a)
    static FElem monomial(int a, EElem c);
    static FElem from_coeffs(FieldRef f, int val2, std::vector<EElem> coeffs, bool exact = true);

    const FieldRef& field() const { return f_; }
    bool exact2() const { return exact_; }
    int val2_bound() const { return val2_; }
    const std::vector<EElem>& coeffs() const { return coeffs_; }

    bool provably_zero() const;
    bool provably_nonzero() const { return !coeffs_.empty() && coeffs_.front().provably_nonzero(); }
    // t2-valuation; element must be provably nonzero with sharp leading coeff.
    int v2() const;
    int known2_until() const;
    EElem coeff_at(int e) const;

    FElem operator-() const;
    friend FElem operator+(const FElem& a, const FElem& b);
    friend FElem operator-(const FElem& a, const FElem& b);
    friend FElem operator*(const FElem& a, const FElem& b);
    FElem inv() const;
    FElem shifted2(int k) const; // * t2^k
    FElem pow(int e) const;

    friend bool operator==(const FElem& a, const FElem& b) {
        return a.val2_ == b.val2_ && a.exact_ == b.exact_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const FElem& a, const FElem& b) { return !(a == b); }
    bool agrees(const FElem& b) const;
    bool eq_exact(const FElem& b) const;

    // The known window reinterpreted as exact (guess-and-verify helper).
    FElem exactified() const;

    // Membership in the rank-one ring (t2-valuation >= 0).
    bool in_O1() const;
    // Membership in the rank-two ring O (additionally t2^0 coeff in O_E).
    bool in_O2() const;
    // Unit of the rank-one ring: v2 == 0.
    bool unit_O1() const { return provably_nonzero() && v2() == 0; }
    // Unit of O: v2 == 0 and residue a unit of O_E.
    bool unit_O2() const;

    std::string str() const;

private:
    void normalize();

    FieldRef f_;
    int val2_ = 0;
    std::vector<EElem> coeffs_;
    bool exact_ = true;
};

FElem fe_mul(const FElem& a, const FElem& b);
FElem fe_inv(const FElem& a);

struct UnitDecomposition {
    int v2;
    int v1;
    FElem unit; // unit of O: t2-val 0, residue a unit of O_E
};

// a = t2^v2 * t1^v1 * unit, per the F^x decomposition.
UnitDecomposition fe_unit_decompose(const FElem& a);

// |a| = q^{-v1} X^{v2}.
Monomial fe_abs(const FElem& a);

// The residue map on the rank-one integers: the t2^0 coefficient.
EElem fe_residue(const FElem& a);

// Nested Laurent element grammar, e.g. "t2^-1*(1+t1) + t2^0*(t1^2)".
FElem fe_parse(FieldRef f, const std::string& text);
EElem ee_parse(FieldRef f, const std::string& text);

} // namespace hlf
