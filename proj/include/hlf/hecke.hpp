#pragma once

#include <optional>

#include "hlf/integrate.hpp"
#include "hlf/sets.hpp"

namespace hlf {

// A basic function on GL_n(F), in one of the two level-m forms:
//
//   Cong: supported on A(I_n + t2^Gamma p^{-1}(.)), with value
//         g(residue of (A^{-1}x - I_n) entrywise over t2^Gamma);
//         g is LaurentX-valued level-m data on M_n(O_E/t1^m).
//
//   Res0: supported on A * GL_n(O1), with value g(residue of A^{-1}x);
//         g is supported on the invertible classes (A = I_n gives the
//         plain residue form g^{0,0}).
class BasicFn {
public:
    enum class Kind { Cong, Res0 };

    static BasicFn cong(MatF a, IntMat gamma, ResFn g);
    static BasicFn res0(MatF a, ResFn g);
    // g^{0,0} with E-level profile g
    static BasicFn res_zero(FieldRef f, unsigned n, ResFn g);

    Kind kind() const { return kind_; }
    unsigned n() const { return a_.n(); }
    unsigned level() const { return g_.level(); }
    const MatF& base() const { return a_; }
    const IntMat& gamma() const { return gamma_; }
    const ResFn& profile() const { return g_; }
    const FieldRef& field() const { return a_.field(); }

    bool is_zero() const { return g_.is_zero(); }
    BasicFn scaled(const LaurentX& c) const;
    BasicFn with_base(MatF a) const;
    BasicFn lifted(const ResRingPtr& higher, rcode_t budget) const;

    // support as a congruence coset (Cong kind only)
    GLCongCoset support_coset() const;

    std::string str() const;

private:
    BasicFn(Kind k, MatF a, IntMat gamma, ResFn g);

    Kind kind_;
    MatF a_;
    IntMat gamma_;
    ResFn g_;
};

LaurentX basic_eval(const BasicFn& f, const MatF& x);

// Pointwise product; empty optional means the zero function.
std::optional<BasicFn> basic_product(const BasicFn& f1, const BasicFn& f2,
                                     rcode_t budget = MatEnumerator::kDefaultBudget);

// The function x -> f(y x^{-1}), again a basic function. For Cong data
// the E-level profile is negated (and conjugated by the base when the
// coefficients do not commute).
BasicFn translate_flip(const BasicFn& f, const MatF& y);

// A finite combination of basic functions; coefficients are kept on the
// terms' E-level profiles, `coeff` below is an optional outer scalar.
class HeckeElem {
public:
    HeckeElem(FieldRef f, unsigned n) : f_(std::move(f)), n_(n) {}

    static HeckeElem zero(FieldRef f, unsigned n) { return HeckeElem(std::move(f), n); }
    static HeckeElem single(BasicFn term);
    static HeckeElem single(const LaurentX& coeff, BasicFn term);

    const FieldRef& field() const { return f_; }
    unsigned n() const { return n_; }
    const std::vector<BasicFn>& terms() const { return terms_; }
    bool is_zero_form() const { return terms_.empty(); }

    void add_term(BasicFn term);
    HeckeElem scaled(const LaurentX& c) const;
    HeckeElem plus(const HeckeElem& o) const;
    LaurentX eval(const MatF& x) const;

    // merge compatible terms and drop zero profiles; the result has
    // pairwise disjoint supports across groups
    HeckeElem normalized(rcode_t budget = MatEnumerator::kDefaultBudget) const;

private:
    FieldRef f_;
    unsigned n_;
    std::vector<BasicFn> terms_;
};

// integral over GL_n(F) of phi(x) |det x|^{-n} d x (additive measure)
LaurentX integrate_GLn(const BasicFn& f, rcode_t budget = MatEnumerator::kDefaultBudget);
LaurentX integrate_GLn(const HeckeElem& f, rcode_t budget = MatEnumerator::kDefaultBudget);

// f1 * f2 (y) = int f1(y g^{-1}) f2(g) dg
HeckeElem convolve(const HeckeElem& f1, const HeckeElem& f2,
                   rcode_t budget = MatEnumerator::kDefaultBudget);

// Rewrite a term over another base with the same support lattice;
// empty when the supports live on different cosets.
std::optional<BasicFn> rebase_to(const BasicFn& term, const MatF& new_base, rcode_t budget);

// exact equality as functions (normalize the difference, then test for
// an empty term list)
bool hecke_equal(const HeckeElem& a, const HeckeElem& b,
                 rcode_t budget = MatEnumerator::kDefaultBudget);

struct StructureTable {
    std::size_t size = 0;
    // constants[i][j][k] = coefficient of basis k in basis_i * basis_j
    std::vector<std::vector<std::vector<LaurentX>>> constants;
    // remainders[i][j] = part of the product outside the basis span
    std::vector<std::vector<HeckeElem>> remainders;
};

StructureTable hecke_structure_constants(const std::vector<HeckeElem>& basis,
                                         rcode_t budget = MatEnumerator::kDefaultBudget);

} // namespace hlf
