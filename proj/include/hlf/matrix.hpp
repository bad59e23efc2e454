#pragma once

#include <vector>

#include "hlf/field.hpp"
#include "hlf/residue.hpp"

namespace hlf {

// Integer exponent matrix (Gamma data for congruence cosets).
class IntMat {
public:
    IntMat(unsigned n, int fill = 0) : n_(n), e_(static_cast<std::size_t>(n) * n, fill) {}
    static IntMat constant(unsigned n, int v) { return IntMat(n, v); }

    unsigned n() const { return n_; }
    int at(unsigned i, unsigned j) const { return e_[i * n_ + j]; }
    int& at(unsigned i, unsigned j) { return e_[i * n_ + j]; }
    int min_entry() const;
    int max_entry() const;
    int sum() const;
    bool is_constant() const;
    bool entrywise_geq(const IntMat& o) const;
    friend bool operator==(const IntMat& a, const IntMat& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }

private:
    unsigned n_;
    std::vector<int> e_;
};

// An n x n matrix over E, the exact carrier of Bruhat-Schwartz data on
// GL_n(E) before reduction to a finite congruence level.
class MatE {
public:
    MatE(FieldRef f, unsigned n)
        : f_(std::move(f)), n_(n), e_(static_cast<std::size_t>(n) * n, EElem::zero(f_)) {}

    static MatE identity(FieldRef f, unsigned n);
    static MatE from_residue(FieldRef f, const ResMat& r);

    const FieldRef& field() const { return f_; }
    unsigned n() const { return n_; }
    const EElem& at(unsigned i, unsigned j) const { return e_[i * n_ + j]; }
    EElem& at(unsigned i, unsigned j) { return e_[i * n_ + j]; }

    MatE operator+(const MatE& o) const;
    MatE operator*(const MatE& o) const;
    EElem det() const;
    // reduction mod t1^m; entries must be integral and known to level m
    ResMat residue(const ResRingPtr& ring) const;
    bool in_GL_OE() const; // integral with unit determinant

private:
    FieldRef f_;
    unsigned n_;
    std::vector<EElem> e_;
};

// An n x n matrix over F with row-major storage; the fixed flattening
// convention T identifies it with F^{n^2} in this same row-major order.
class MatF {
public:
    MatF(FieldRef f, unsigned n)
        : f_(std::move(f)), n_(n), e_(static_cast<std::size_t>(n) * n, FElem::zero(f_)) {}

    static MatF identity(FieldRef f, unsigned n);
    static MatF scalar(FieldRef f, unsigned n, const FElem& c);

    const FieldRef& field() const { return f_; }
    unsigned n() const { return n_; }
    const FElem& at(unsigned i, unsigned j) const { return e_[i * n_ + j]; }
    FElem& at(unsigned i, unsigned j) { return e_[i * n_ + j]; }

    MatF operator+(const MatF& o) const;
    MatF operator-(const MatF& o) const;
    MatF operator-() const;
    MatF operator*(const MatF& o) const;
    MatF scaled(const FElem& c) const;
    MatF shifted2(int k) const; // * t2^k entrywise

    // Row-major flattening (the T convention).
    std::vector<FElem> flatten() const { return e_; }
    static MatF unflatten(FieldRef f, unsigned n, std::vector<FElem> entries);

    // Entrywise provable equality.
    bool eq_exact(const MatF& o) const;
    bool agrees(const MatF& o) const;

    // All entries in the rank-one ring.
    bool integral_O1() const;
    // Membership in GL_n of the rank-one ring: integral with integral inverse.
    bool in_GLO1() const;
    // Congruent to the identity mod t2: (this - I) entrywise in t2*O1.
    bool is_one_mod_t2() const;

    // Residue matrix (t2^0 coefficients reduced mod t1^m); all entries
    // must be t2-integral with t1-integral residues.
    ResMat residue(const ResRingPtr& ring) const;
    static MatF lift(FieldRef f, const ResMat& r);

    std::string str() const;

private:
    FieldRef f_;
    unsigned n_;
    std::vector<FElem> e_;
};

FElem mat_det(const MatF& a);
MatF mat_inv(const MatF& a);

// b^{-1} a, exactified when the quotient is certified: if the windowed
// result's known digits, read as an exact matrix, reproduce a on
// multiplication by b, the exact form is returned. Keeps congruence
// decisions decidable when quotients are genuinely polynomial.
MatF mat_left_quotient(const MatF& b, const MatF& a);

// Inverse of a matrix congruent to I mod t2, via the truncated Neumann
// series (terminates within the t2-window).
MatF neumann_inv(const MatF& a);

struct SmithForm {
    MatF u;
    MatF d; // diag(t2^{m_1}, ..., t2^{m_n}), exponents ascending
    MatF v;
    std::vector<int> exponents;
};

// A = U * D * V over the rank-one ring, with U, V in GL_n(O1).
SmithForm smith_form(const MatF& a);

// K(m) = kernel of GL_n(O_E) -> GL_n(O_E/t1^m).
struct CongLevel {
    unsigned m;
    explicit CongLevel(unsigned level) : m(level) {
        if (level < 1) throw Error("congruence level must be >= 1");
    }
};

// Enumerates canonical representatives of GL_n(O_E)/K(m), i.e. the
// elements of GL_n(O_E/t1^m), in encoding order.
std::vector<ResMat> congruence_enumerate(unsigned q, unsigned n, CongLevel level,
                                         rcode_t budget = MatEnumerator::kDefaultBudget);

} // namespace hlf
