#pragma once

#include <vector>

#include "hlf/residue.hpp"
#include "hlf/sets.hpp"

namespace hlf {

// a + t1^k O_E with the center reduced mod t1^k.
struct EBall {
    EElem a;
    int k;

    EBall(EElem center, int level);
    bool contains(const EElem& x) const;
    friend bool operator==(const EBall& x, const EBall& y) {
        return x.k == y.k && x.a == y.a;
    }
};

struct EBox {
    std::vector<EBall> balls;

    unsigned dim() const { return static_cast<unsigned>(balls.size()); }
    bool contains(const std::vector<EElem>& x) const;
    friend bool operator==(const EBox& x, const EBox& y) { return x.balls == y.balls; }
};

// A locally constant integrable function on E^d (finite combination of
// box indicators), or level-m data on GL_n(E)-classes. These are the
// integrands of the E-level Haar integral.
class EFunction {
public:
    struct Term {
        LaurentX coeff;
        EBox box;
    };

    static EFunction boxes(FieldRef f, unsigned dim, std::vector<Term> terms);
    static EFunction gl_classes(FieldRef f, ResFn data);
    // the constant-one function on O_E^d
    static EFunction char_unit_box(FieldRef f, unsigned dim);

    bool is_gl() const { return is_gl_; }
    unsigned dim() const { return dim_; }
    const FieldRef& field() const { return f_; }
    const std::vector<Term>& terms() const { return terms_; }
    const ResFn& gl_data() const;

    LaurentX eval(const std::vector<EElem>& x) const; // box kind
    EFunction scaled(const LaurentX& c) const;
    EFunction plus(const EFunction& o) const;

    // argument transform u -> (eps_i * u_{perm[i]})_i, for the exact
    // linear change of variables on the F-level (box kind)
    EFunction scaled_argument(const std::vector<EElem>& eps,
                              const std::vector<unsigned>& perm) const;
    // argument translation u -> u + s
    EFunction translated_argument(const std::vector<EElem>& s) const;

    // integrate out one coordinate (box kind): returns the E-level
    // partial integral, a function of the remaining coordinates
    EFunction partial_integral(unsigned coord) const;

    // rewrite with pairwise disjoint boxes (common refinement cells)
    EFunction normalized() const;

private:
    EFunction(FieldRef f, unsigned dim, bool gl)
        : f_(std::move(f)), dim_(dim), is_gl_(gl),
          gl_(ResRing::get(f_->q, 1), 1) {}

    FieldRef f_;
    unsigned dim_;
    bool is_gl_;
    std::vector<Term> terms_;
    ResFn gl_;
};

// The normalized Haar integral on E^d (mu_E(O_E) = 1), and for GL-class
// data the GL_n(E) Haar integral with the |det|^{-n}-weighted additive
// normalization mu(M_n(O_E)) = 1.
LaurentX haar_E(const EFunction& f, rcode_t budget = MatEnumerator::kDefaultBudget);

} // namespace hlf
