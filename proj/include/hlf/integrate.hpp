#pragma once

#include "hlf/efunction.hpp"
#include "hlf/matrix.hpp"

namespace hlf {

// One lifted term g^{a,gamma} * X^{shift}: the E-level function g
// transported to the box a + t2^gamma O1^n through the residue map.
struct SimpleTerm {
    EFunction g; // box kind, dim n
    std::vector<FElem> a;
    std::vector<int> gamma;
    int x_shift = 0;

    unsigned dim() const { return static_cast<unsigned>(a.size()); }
    Box support() const;
};

// A finite C((X))-combination of lifted terms on F^n.
class SimpleFn {
public:
    SimpleFn(FieldRef f, unsigned n) : f_(std::move(f)), n_(n) {}

    static SimpleFn char_box(FieldRef f, std::vector<FElem> center, std::vector<int> gamma);
    // char of a + t2^gamma p^{-1}(S) for an E-level set S given as an E-box
    static SimpleFn lift_term(SimpleTerm t);

    const FieldRef& field() const { return f_; }
    unsigned dim() const { return n_; }
    const std::vector<SimpleTerm>& terms() const { return terms_; }
    void add_term(SimpleTerm t);

    LaurentX eval(const std::vector<FElem>& x) const;
    SimpleFn scaled(const LaurentX& c) const;
    SimpleFn plus(const SimpleFn& o) const;
    // x -> f(x + shift)
    SimpleFn translated(const std::vector<FElem>& shift) const;

private:
    FieldRef f_;
    unsigned n_;
    std::vector<SimpleTerm> terms_;
};

LaurentX integrate_F(const SimpleFn& f);

// Repeated integral in the coordinate order sigma (a permutation of
// 0..n-1, integration order); the value is order independent.
LaurentX integrate_Fn(const SimpleFn& f, const std::vector<unsigned>& order);
LaurentX integrate_Fn(const SimpleFn& f);

// Integrate out a single coordinate, exactly.
SimpleFn partial_integrate(const SimpleFn& f, unsigned coord);

struct LinearTransformResult {
    SimpleFn image;    // x -> f(tau x), exact symbolic form
    LaurentX integral; // |det tau|^{-1} * integral(f)
};

// Exact symbolic composite for monomial matrices (permutation times
// diagonal); throws UnsupportedImageClass otherwise.
LinearTransformResult transform_linear(const SimpleFn& f, const MatF& tau);
// Integral-only route, valid for every invertible tau.
LaurentX transform_integral(const SimpleFn& f, const MatF& tau);

} // namespace hlf
