#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "hlf/field.hpp"
#include "hlf/laurent.hpp"

namespace hlf {

using rcode_t = std::uint64_t;

class ResRing;
using ResRingPtr = std::shared_ptr<const ResRing>;

// The finite quotient R_m = O_E / t1^m. Ring elements are encoded as
// base-q digit vectors (digit i = GF(q) code of the t1^i coefficient),
// packed into a single integer in [0, q^m).
class ResRing {
public:
    ResRing(unsigned q, unsigned m);
    static ResRingPtr get(unsigned q, unsigned m);

    unsigned q() const { return q_; }
    unsigned level() const { return m_; }
    rcode_t size() const { return size_; }
    const GFPtr& gf() const { return gf_; }

    rcode_t add(rcode_t a, rcode_t b) const;
    rcode_t neg(rcode_t a) const;
    rcode_t sub(rcode_t a, rcode_t b) const { return add(a, neg(b)); }
    rcode_t mul(rcode_t a, rcode_t b) const;
    bool is_unit(rcode_t a) const { return a % q_ != 0; }
    rcode_t inv(rcode_t a) const;
    rcode_t one() const { return 1; }

    gf_t digit(rcode_t a, unsigned i) const;

    // Reduction mod t1^m of an integral E-element; the element must be
    // known at least to t1^m.
    rcode_t reduce(const EElem& e) const;
    // The canonical polynomial lift.
    EElem lift(FieldRef f, rcode_t a) const;

    // Reduction to a lower level m' <= m.
    rcode_t project(rcode_t a, unsigned lower_m) const;

private:
    unsigned q_, m_;
    rcode_t size_;
    GFPtr gf_;
};

// A square matrix over R_m, with a packed total encoding used as a set
// key during enumeration and support bookkeeping.
class ResMat {
public:
    ResMat(ResRingPtr ring, unsigned n)
        : ring_(std::move(ring)), n_(n), e_(static_cast<std::size_t>(n) * n, 0) {}

    static ResMat identity(ResRingPtr ring, unsigned n);

    const ResRingPtr& ring() const { return ring_; }
    unsigned n() const { return n_; }
    rcode_t at(unsigned i, unsigned j) const { return e_[i * n_ + j]; }
    rcode_t& at(unsigned i, unsigned j) { return e_[i * n_ + j]; }

    ResMat operator+(const ResMat& o) const;
    ResMat operator-() const;
    ResMat operator-(const ResMat& o) const { return *this + (-o); }
    ResMat operator*(const ResMat& o) const;

    bool is_invertible() const;
    ResMat inverse() const; // throws SingularAtPrecision if not invertible
    rcode_t det() const;

    rcode_t encode() const;
    static ResMat decode(ResRingPtr ring, unsigned n, rcode_t code);
    // Number of matrices (q^m)^(n^2); throws BudgetExceeded over the cap.
    static rcode_t space_size(const ResRingPtr& ring, unsigned n, rcode_t budget);

    ResMat project(const ResRingPtr& lower) const;

    friend bool operator==(const ResMat& a, const ResMat& b) { return a.e_ == b.e_; }
    friend bool operator!=(const ResMat& a, const ResMat& b) { return !(a == b); }

    std::string str() const;

private:
    ResRingPtr ring_;
    unsigned n_;
    std::vector<rcode_t> e_;
};

// Restartable enumeration of M_n(R_m) (optionally filtered to the
// invertible matrices). Streams canonical representatives in encoding
// order; `begin_at` allows partitioned parallel scans.
class MatEnumerator {
public:
    MatEnumerator(ResRingPtr ring, unsigned n, bool only_invertible,
                  rcode_t budget = kDefaultBudget, rcode_t begin_at = 0);

    bool next(ResMat& out);
    void reset() { cursor_ = begin_; }
    rcode_t space() const { return space_; }

    static constexpr rcode_t kDefaultBudget = 1ull << 22;

private:
    ResRingPtr ring_;
    unsigned n_;
    bool only_invertible_;
    rcode_t space_, begin_, cursor_;
};

// A C((X))-valued function on M_n(R_m) with finite support, or the
// constant `full_value` on all of M_n(R_m) (the full-residue marker).
// This is the level-m form of all E-level data attached to basic
// functions and congruence cosets.
class ResFn {
public:
    ResFn(ResRingPtr ring, unsigned n) : ring_(std::move(ring)), n_(n) {}

    static ResFn zero(ResRingPtr ring, unsigned n) { return ResFn(std::move(ring), n); }
    static ResFn constant_full(ResRingPtr ring, unsigned n, LaurentX value);
    static ResFn char_point(const ResMat& p) { return char_point(p, LaurentX::one()); }
    static ResFn char_point(const ResMat& p, LaurentX coeff);
    // char of the invertible matrices GL_n(R_m)
    static ResFn char_invertible(ResRingPtr ring, unsigned n, rcode_t budget);

    const ResRingPtr& ring() const { return ring_; }
    unsigned n() const { return n_; }
    unsigned level() const { return ring_->level(); }
    bool full() const { return full_; }
    const LaurentX& full_value() const { return full_value_; }
    const std::map<rcode_t, LaurentX>& values() const { return values_; }

    bool is_zero() const { return !full_ && values_.empty(); }
    LaurentX value_at(const ResMat& x) const;
    LaurentX value_at_code(rcode_t code) const;
    void set(const ResMat& x, LaurentX v);
    void add(const ResMat& x, const LaurentX& v);

    ResFn scaled(const LaurentX& c) const;
    ResFn plus(const ResFn& o) const;
    // g(-R)
    ResFn negated_argument() const;
    // g(R - S)
    ResFn translated(const ResMat& s) const;
    // g(L^-1 R) for invertible L (argument left-translation)
    ResFn left_translated(const ResMat& l) const;
    // g(R L^-1)
    ResFn right_translated(const ResMat& l) const;
    // g(R^-1); zero outside the invertibles
    ResFn inverted_argument(rcode_t budget) const;
    // pointwise product
    ResFn times(const ResFn& o) const;
    // restrict support to invertible matrices
    ResFn restricted_invertible(rcode_t budget) const;
    // reinterpret at a higher level (values constant on fibers)
    ResFn lifted(const ResRingPtr& higher, rcode_t budget) const;

    // sum over the whole support of the values (full marker needs the
    // space size, hence a budget)
    LaurentX support_sum(rcode_t budget) const;
    // number of support points
    rcode_t support_count(rcode_t budget) const;

    friend bool operator==(const ResFn& a, const ResFn& b);

    // Materialize the full marker into an explicit map.
    ResFn materialized(rcode_t budget) const;

private:
    ResRingPtr ring_;
    unsigned n_;
    bool full_ = false;
    LaurentX full_value_;
    std::map<rcode_t, LaurentX> values_;
};

// |GL_n(O_E/t1^m)| = q^{(m-1)n^2} * prod_{k=0}^{n-1} (q^n - q^k), exact.
Int gl_order(unsigned q, unsigned m, unsigned n);

} // namespace hlf
