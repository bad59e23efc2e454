#include "hlf/integrate.hpp"

#include <numeric>

namespace hlf {

Box SimpleTerm::support() const {
    Box b;
    for (unsigned i = 0; i < dim(); ++i) b.balls.emplace_back(a[i], gamma[i]);
    return b;
}

SimpleFn SimpleFn::char_box(FieldRef f, std::vector<FElem> center, std::vector<int> gamma) {
    unsigned n = static_cast<unsigned>(center.size());
    SimpleFn r(f, n);
    SimpleTerm t{EFunction::char_unit_box(f, n), std::move(center), std::move(gamma), 0};
    r.add_term(std::move(t));
    return r;
}

SimpleFn SimpleFn::lift_term(SimpleTerm t) {
    SimpleFn r(t.g.field(), t.dim());
    r.add_term(std::move(t));
    return r;
}

void SimpleFn::add_term(SimpleTerm t) {
    if (t.dim() != n_ || t.g.dim() != n_ || t.gamma.size() != n_)
        throw DimensionMismatch("simple function term dimension");
    terms_.push_back(std::move(t));
}

LaurentX SimpleFn::eval(const std::vector<FElem>& x) const {
    if (x.size() != n_) throw DimensionMismatch("simple function evaluation");
    LaurentX v;
    for (const auto& t : terms_) {
        std::vector<EElem> u;
        u.reserve(n_);
        bool inside = true;
        for (unsigned i = 0; i < n_ && inside; ++i) {
            FElem d = (x[i] - t.a[i]).shifted2(-t.gamma[i]);
            if (!d.in_O1()) {
                inside = false;
                break;
            }
            u.push_back(fe_residue(d));
        }
        if (inside) v += t.g.eval(u).shifted(t.x_shift);
    }
    return v;
}

SimpleFn SimpleFn::scaled(const LaurentX& c) const {
    SimpleFn r(f_, n_);
    if (c.is_zero()) return r;
    for (const auto& t : terms_) r.terms_.push_back(SimpleTerm{t.g.scaled(c), t.a, t.gamma, t.x_shift});
    return r;
}

SimpleFn SimpleFn::plus(const SimpleFn& o) const {
    if (n_ != o.n_) throw DimensionMismatch("simple function sum");
    SimpleFn r(*this);
    for (const auto& t : o.terms_) r.terms_.push_back(t);
    return r;
}

SimpleFn SimpleFn::translated(const std::vector<FElem>& shift) const {
    if (shift.size() != n_) throw DimensionMismatch("translation vector");
    SimpleFn r(f_, n_);
    for (const auto& t : terms_) {
        std::vector<FElem> a;
        a.reserve(n_);
        for (unsigned i = 0; i < n_; ++i) a.push_back(t.a[i] - shift[i]);
        r.terms_.push_back(SimpleTerm{t.g, std::move(a), t.gamma, t.x_shift});
    }
    return r;
}

SimpleFn partial_integrate(const SimpleFn& f, unsigned coord) {
    if (coord >= f.dim()) throw DimensionMismatch("integration coordinate");
    SimpleFn r(f.field(), f.dim() - 1);
    for (const auto& t : f.terms()) {
        SimpleTerm nt{t.g.partial_integral(coord), {}, {}, t.x_shift + t.gamma[coord]};
        for (unsigned i = 0; i < f.dim(); ++i) {
            if (i == coord) continue;
            nt.a.push_back(t.a[i]);
            nt.gamma.push_back(t.gamma[i]);
        }
        r.add_term(std::move(nt));
    }
    return r;
}

LaurentX integrate_Fn(const SimpleFn& f, const std::vector<unsigned>& order) {
    if (order.size() != f.dim()) throw DimensionMismatch("integration order");
    // validate the permutation
    std::vector<bool> seen(f.dim(), false);
    for (unsigned c : order) {
        if (c >= f.dim() || seen[c]) throw Error("invalid integration order");
        seen[c] = true;
    }
    SimpleFn cur = f;
    std::vector<unsigned> remaining(f.dim());
    std::iota(remaining.begin(), remaining.end(), 0u);
    for (unsigned c : order) {
        // translate the original coordinate index into the current one
        unsigned pos = 0;
        while (remaining[pos] != c) ++pos;
        cur = partial_integrate(cur, pos);
        remaining.erase(remaining.begin() + pos);
    }
    // dimension 0: every term is a plain value
    LaurentX total;
    for (const auto& t : cur.terms()) {
        LaurentX v;
        for (const auto& term : t.g.terms()) v += term.coeff;
        total += v.shifted(t.x_shift);
    }
    return total;
}

LaurentX integrate_Fn(const SimpleFn& f) {
    std::vector<unsigned> order(f.dim());
    std::iota(order.begin(), order.end(), 0u);
    return integrate_Fn(f, order);
}

LaurentX integrate_F(const SimpleFn& f) {
    if (f.dim() != 1) throw DimensionMismatch("integrate_F expects one variable");
    return integrate_Fn(f);
}

namespace {

struct MonomialShape {
    std::vector<unsigned> perm; // row i has its nonzero entry in column perm[i]
    std::vector<FElem> entry;   // the entry at (i, perm[i])
};

// Detect a monomial matrix: exactly one provably nonzero entry per row
// and per column, all other entries provably zero.
MonomialShape monomial_shape(const MatF& tau) {
    unsigned n = tau.n();
    MonomialShape s;
    s.perm.assign(n, n);
    std::vector<bool> used(n, false);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            const FElem& e = tau.at(i, j);
            if (e.provably_zero()) continue;
            if (!e.provably_nonzero())
                throw PrecisionExhausted("matrix class undetermined at this precision");
            if (s.perm[i] != n)
                throw UnsupportedImageClass("matrix is not monomial (two entries in a row)");
            s.perm[i] = j;
            s.entry.push_back(e);
        }
        if (s.perm[i] == n || used[s.perm[i]])
            throw UnsupportedImageClass("matrix is not monomial");
        used[s.perm[i]] = true;
    }
    return s;
}

} // namespace

LinearTransformResult transform_linear(const SimpleFn& f, const MatF& tau) {
    unsigned n = f.dim();
    if (tau.n() != n) throw DimensionMismatch("transform dimension");
    MonomialShape shape = monomial_shape(tau);

    // (tau x)_i = d_i x_{perm[i]}: each term's support pulls back
    // coordinatewise, and the residue argument picks up the unit part
    // of d_i as an E-level scale.
    SimpleFn image(f.field(), n);
    for (const auto& t : f.terms()) {
        std::vector<FElem> a(n, FElem::zero(f.field()));
        std::vector<int> gamma(n, 0);
        std::vector<EElem> eps(n, EElem::one(f.field()));
        std::vector<unsigned> gperm(n, 0);
        for (unsigned i = 0; i < n; ++i) {
            const FElem& d = shape.entry[i];
            unsigned j = shape.perm[i];
            FElem dinv = d.inv();
            int v = d.v2();
            a[j] = dinv * t.a[i];
            gamma[j] = t.gamma[i] - v;
            // residue of (d x_j - a_i) t2^{-gamma_i} = p(d t2^{-v}) * u_j
            eps[i] = fe_residue(d.shifted2(-v));
            gperm[i] = j;
        }
        image.add_term(
            SimpleTerm{t.g.scaled_argument(eps, gperm), std::move(a), std::move(gamma), t.x_shift});
    }
    LaurentX integral = transform_integral(f, tau);
    return LinearTransformResult{std::move(image), std::move(integral)};
}

LaurentX transform_integral(const SimpleFn& f, const MatF& tau) {
    FElem det = mat_det(tau);
    if (!det.provably_nonzero()) throw SingularAtPrecision("transform by a singular matrix");
    Monomial absdet = fe_abs(det);
    return absdet.inverse().to_laurent(f.field()->q) * integrate_Fn(f);
}

} // namespace hlf
