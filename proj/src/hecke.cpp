#include "hlf/hecke.hpp"

#include <algorithm>
#include <sstream>

namespace hlf {

namespace {

// A = t2^a * U with U in GL_n(O) (the rank-two units). Conjugation by
// such A preserves M_n(O1) and acts on level-m residues through U.
struct NormalizingParts {
    int t2_pow;
    MatF unit;
};

std::optional<NormalizingParts> normalizing_parts(const MatF& a) {
    FElem det = mat_det(a);
    if (!det.provably_nonzero()) return std::nullopt;
    int v = det.v2();
    unsigned n = a.n();
    if (v % static_cast<int>(n) != 0) return std::nullopt;
    int pw = v / static_cast<int>(n);
    MatF u = a.shifted2(-pw);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (!u.at(i, j).in_O2()) return std::nullopt;
    FElem du = mat_det(u);
    if (!du.unit_O2()) return std::nullopt;
    return NormalizingParts{pw, std::move(u)};
}

// residue of the unit part mod t1^m, with its inverse (identity at n=1,
// where conjugation is trivial)
struct ConjData {
    ResMat u, uinv;

    ResMat conj(const ResMat& r) const { return u * r * uinv; }     // A r A^{-1}
    ResMat conj_inv(const ResMat& r) const { return uinv * r * u; } // A^{-1} r A
};

ConjData conj_data(const MatF& a, const ResRingPtr& ring) {
    unsigned n = a.n();
    if (n == 1) {
        ResMat id = ResMat::identity(ring, 1);
        return ConjData{id, id};
    }
    auto parts = normalizing_parts(a);
    if (!parts)
        throw UnsupportedImageClass(
            "base matrix outside the normalizing class t2^Z * GL_n(O) needed for exact "
            "conjugation");
    ResMat u = parts->unit.residue(ring);
    return ConjData{u, u.inverse()};
}

MatF lift_coset_point(const FieldRef& f, const MatF& base, int theta, const ResMat& rho) {
    MatF m = MatF::lift(f, rho).shifted2(theta);
    return base * (MatF::identity(f, base.n()) + m);
}

} // namespace

// ---------------------------------------------------------------------------
// BasicFn

BasicFn::BasicFn(Kind k, MatF a, IntMat gamma, ResFn g)
    : kind_(k), a_(std::move(a)), gamma_(std::move(gamma)), g_(std::move(g)) {
    if (a_.n() != g_.n()) throw DimensionMismatch("basic function data");
    if (a_.field()->q != g_.ring()->q()) throw Error("profile ring and field disagree on q");
}

BasicFn BasicFn::cong(MatF a, IntMat gamma, ResFn g) {
    if (gamma.min_entry() < 1)
        throw UnsupportedImageClass("congruence form needs Gamma entrywise >= 1");
    FElem det = mat_det(a);
    if (!det.provably_nonzero()) throw SingularAtPrecision("basic function base not invertible");
    return BasicFn(Kind::Cong, std::move(a), std::move(gamma), std::move(g));
}

BasicFn BasicFn::res0(MatF a, ResFn g) {
    FElem det = mat_det(a);
    if (!det.provably_nonzero()) throw SingularAtPrecision("basic function base not invertible");
    unsigned n = a.n();
    ResFn restricted = g.restricted_invertible(MatEnumerator::kDefaultBudget);
    return BasicFn(Kind::Res0, std::move(a), IntMat(n, 0), std::move(restricted));
}

BasicFn BasicFn::res_zero(FieldRef f, unsigned n, ResFn g) {
    return res0(MatF::identity(std::move(f), n), std::move(g));
}

BasicFn BasicFn::scaled(const LaurentX& c) const {
    return BasicFn(kind_, a_, gamma_, g_.scaled(c));
}

BasicFn BasicFn::with_base(MatF a) const { return BasicFn(kind_, std::move(a), gamma_, g_); }

BasicFn BasicFn::lifted(const ResRingPtr& higher, rcode_t budget) const {
    return BasicFn(kind_, a_, gamma_, g_.lifted(higher, budget));
}

GLCongCoset BasicFn::support_coset() const {
    if (kind_ != Kind::Cong) throw Error("support coset applies to the congruence form");
    ResSupport v{g_.ring(), n(), g_.full(), {}};
    if (!g_.full())
        for (const auto& [k, val] : g_.values()) v.elems.insert(k);
    return GLCongCoset(a_, gamma_, std::move(v));
}

std::string BasicFn::str() const {
    std::ostringstream os;
    if (kind_ == Kind::Cong) {
        os << "cong(A=" << a_.str() << ", Gamma[0][0]=" << gamma_.at(0, 0)
           << ", level=" << level() << ", classes=" << (g_.full() ? ~0ull : g_.values().size())
           << ")";
    } else {
        os << "res0(A=" << a_.str() << ", level=" << level() << ", classes=" << g_.values().size()
           << ")";
    }
    return os.str();
}

LaurentX basic_eval(const BasicFn& f, const MatF& x) {
    unsigned n = f.n();
    const FieldRef& fld = f.field();
    MatF u = mat_left_quotient(f.base(), x);
    if (f.kind() == BasicFn::Kind::Cong) {
        MatF m(fld, n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                FElem e = u.at(i, j);
                if (i == j) e = e - FElem::one(fld);
                e = e.shifted2(-f.gamma().at(i, j));
                if (!e.in_O1()) return LaurentX::zero();
                m.at(i, j) = std::move(e);
            }
        if (f.profile().full()) return f.profile().full_value();
        ResMat r(f.profile().ring(), n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                EElem res = fe_residue(m.at(i, j));
                if (!res.in_OE()) return LaurentX::zero();
                r.at(i, j) = f.profile().ring()->reduce(res);
            }
        return f.profile().value_at(r);
    }
    // Res0: x in A GL_n(O1) with an integral residue chart
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (!u.at(i, j).in_O1()) return LaurentX::zero();
    FElem det = mat_det(u);
    if (!det.provably_nonzero() || det.v2() != 0) return LaurentX::zero();
    ResMat r(f.profile().ring(), n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            EElem res = fe_residue(u.at(i, j));
            if (!res.in_OE()) return LaurentX::zero();
            r.at(i, j) = f.profile().ring()->reduce(res);
        }
    return f.profile().value_at(r);
}

// ---------------------------------------------------------------------------
// products

namespace {

std::optional<BasicFn> product_cong_cong(const BasicFn& f1, const BasicFn& f2, rcode_t budget) {
    const FieldRef& fld = f1.field();
    unsigned n = f1.n();
    // orient: `fine` has the entrywise larger Gamma, `coarse` constant
    const BasicFn* fine = nullptr;
    const BasicFn* coarse = nullptr;
    if (f1.gamma().entrywise_geq(f2.gamma()) && f2.gamma().is_constant()) {
        fine = &f1;
        coarse = &f2;
    } else if (f2.gamma().entrywise_geq(f1.gamma()) && f1.gamma().is_constant()) {
        fine = &f2;
        coarse = &f1;
    }

    if (fine == nullptr) {
        if (!(f1.base() - f2.base()).eq_exact(MatF(fld, n)))
            throw UnsupportedImageClass(
                "product of congruence forms with incomparable Gamma and distinct bases");
        // same base: theta = max(Gamma1, Gamma2) with masked residues
        IntMat theta(n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                theta.at(i, j) = std::max(f1.gamma().at(i, j), f2.gamma().at(i, j));
        auto ring = f1.profile().ring();
        ResFn h(ring, n);
        MatEnumerator en(ring, n, false, budget);
        ResMat p(ring, n);
        while (en.next(p)) {
            ResMat r1(ring, n), r2(ring, n);
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j) {
                    if (f1.gamma().at(i, j) == theta.at(i, j)) r1.at(i, j) = p.at(i, j);
                    if (f2.gamma().at(i, j) == theta.at(i, j)) r2.at(i, j) = p.at(i, j);
                }
            LaurentX v = f1.profile().value_at(r1) * f2.profile().value_at(r2);
            if (!v.is_zero()) h.set(p, std::move(v));
        }
        if (h.is_zero()) return std::nullopt;
        return BasicFn::cong(f1.base(), std::move(theta), std::move(h));
    }

    int delta = coarse->gamma().at(0, 0);
    MatF c = mat_left_quotient(coarse->base(), fine->base());
    if (!c.is_one_mod_t2()) return std::nullopt;

    MatF s(fld, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            FElem e = c.at(i, j);
            if (i == j) e = e - FElem::one(fld);
            e = e.shifted2(-delta);
            if (e.provably_zero() || e.val2_bound() >= 0) {
                s.at(i, j) = std::move(e);
                continue;
            }
            if (e.provably_nonzero()) return std::nullopt;
            throw PrecisionExhausted("product support undetermined at this precision");
        }

    if (coarse->profile().full()) {
        ResFn h = fine->profile().scaled(coarse->profile().full_value());
        if (h.is_zero()) return std::nullopt;
        return BasicFn::cong(fine->base(), fine->gamma(), std::move(h));
    }

    auto ring = fine->profile().ring();
    unsigned m = ring->level();

    if (fine->profile().full() && fine->gamma().is_constant() &&
        fine->gamma().at(0, 0) == delta) {
        // the free residues of the fine factor absorb the offset S; the
        // intersection lives on a shifted chart, reached by moving the
        // base point by an exact lift of -S mod t1^m
        MatF shift(fld, n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                EElem head = fe_residue(s.at(i, j)).truncated_below(static_cast<int>(m));
                shift.at(i, j) = FElem::from_e(-head);
            }
        MatF d = fine->base() * (MatF::identity(fld, n) + shift.shifted2(delta));
        ResFn h = coarse->profile().scaled(fine->profile().full_value());
        if (h.is_zero()) return std::nullopt;
        return BasicFn::cong(std::move(d), fine->gamma(), std::move(h));
    }

    bool any_masked = false;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (fine->gamma().at(i, j) == delta) any_masked = true;

    ResMat sm(ring, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            EElem r = fe_residue(s.at(i, j));
            if (!r.in_OE()) {
                if (fine->profile().full() && fine->gamma().at(i, j) == delta)
                    throw UnsupportedImageClass(
                        "chart shift with non-constant Gamma is not supported");
                return std::nullopt;
            }
            sm.at(i, j) = ring->reduce(r);
        }

    if (!any_masked) {
        // the coarse condition is constant across the fine support
        LaurentX v2 = coarse->profile().value_at(sm);
        ResFn h = fine->profile().scaled(v2);
        if (h.is_zero()) return std::nullopt;
        return BasicFn::cong(fine->base(), fine->gamma(), std::move(h));
    }
    if (fine->profile().full())
        throw UnsupportedImageClass("chart shift with non-constant Gamma is not supported");

    ResFn h(ring, n);
    for (const auto& [code, v1] : fine->profile().values()) {
        ResMat r = ResMat::decode(ring, n, code);
        ResMat t = sm;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                if (fine->gamma().at(i, j) == delta)
                    t.at(i, j) = ring->add(t.at(i, j), r.at(i, j));
        LaurentX v = v1 * coarse->profile().value_at(t);
        if (!v.is_zero()) h.set(r, std::move(v));
    }
    if (h.is_zero()) return std::nullopt;
    return BasicFn::cong(fine->base(), fine->gamma(), std::move(h));
}

std::optional<BasicFn> product_res0_res0(const BasicFn& f1, const BasicFn& f2, rcode_t budget) {
    (void)budget;
    unsigned n = f1.n();
    MatF c = mat_left_quotient(f1.base(), f2.base());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (!c.at(i, j).in_O1()) return std::nullopt;
    FElem det = mat_det(c);
    if (!det.provably_nonzero() || det.v2() != 0) return std::nullopt;
    auto ring = f1.profile().ring();
    ResMat cm(ring, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            EElem r = fe_residue(c.at(i, j));
            if (!r.in_OE()) return std::nullopt; // different residue charts
            cm.at(i, j) = ring->reduce(r);
        }
    if (!cm.is_invertible()) return std::nullopt;
    ResMat cminv = cm.inverse();
    ResFn h(ring, n);
    for (const auto& [code, v1] : f1.profile().values()) {
        ResMat r = ResMat::decode(ring, n, code);
        LaurentX v = v1 * f2.profile().value_at(cminv * r);
        if (!v.is_zero()) h.set(r, std::move(v));
    }
    if (h.is_zero()) return std::nullopt;
    return BasicFn::res0(f1.base(), std::move(h));
}

// constant value of a Res0 factor on the support of a Cong factor
std::optional<LaurentX> res0_value_on_cong(const BasicFn& res, const BasicFn& cong) {
    unsigned n = res.n();
    MatF s0 = mat_left_quotient(res.base(), cong.base());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (!s0.at(i, j).in_O1()) return std::nullopt;
    FElem det = mat_det(s0);
    if (!det.provably_nonzero() || det.v2() != 0) return std::nullopt;
    auto ring = res.profile().ring();
    ResMat r0(ring, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            EElem r = fe_residue(s0.at(i, j));
            if (!r.in_OE()) return std::nullopt;
            r0.at(i, j) = ring->reduce(r);
        }
    LaurentX v = res.profile().value_at(r0);
    if (v.is_zero()) return std::nullopt;
    return v;
}

} // namespace

std::optional<BasicFn> basic_product(const BasicFn& f1, const BasicFn& f2, rcode_t budget) {
    if (f1.n() != f2.n()) throw DimensionMismatch("basic function product");
    if (f1.is_zero() || f2.is_zero()) return std::nullopt;
    // common level
    if (f1.level() != f2.level()) {
        auto higher = f1.level() > f2.level() ? f1.profile().ring() : f2.profile().ring();
        return basic_product(f1.lifted(higher, budget), f2.lifted(higher, budget), budget);
    }
    using K = BasicFn::Kind;
    if (f1.kind() == K::Cong && f2.kind() == K::Cong) return product_cong_cong(f1, f2, budget);
    if (f1.kind() == K::Res0 && f2.kind() == K::Res0) return product_res0_res0(f1, f2, budget);
    const BasicFn& res = f1.kind() == K::Res0 ? f1 : f2;
    const BasicFn& cong = f1.kind() == K::Res0 ? f2 : f1;
    auto v = res0_value_on_cong(res, cong);
    if (!v) return std::nullopt;
    BasicFn out = cong.scaled(*v);
    if (out.is_zero()) return std::nullopt;
    return out;
}

BasicFn translate_flip(const BasicFn& f, const MatF& y) {
    unsigned n = f.n();
    MatF base = mat_left_quotient(f.base(), y); // A^{-1} y
    auto ring = f.profile().ring();
    ConjData cj = conj_data(base, ring);
    if (f.kind() == BasicFn::Kind::Cong) {
        if (!f.gamma().is_constant())
            throw UnsupportedImageClass("translate-flip needs a constant Gamma");
        // value at x = B(I + t2^gamma N): g(-B N B^{-1}) with B = A^{-1} y
        if (f.profile().full())
            return BasicFn::cong(std::move(base), f.gamma(), f.profile()); // negation-stable
        ResFn h(ring, n);
        for (const auto& [code, v] : f.profile().values()) {
            // g value v sits at M-residue `code`; solve -B N B^{-1} = M
            ResMat m = ResMat::decode(ring, n, code);
            ResMat nres = -cj.conj_inv(m);
            h.set(nres, v);
        }
        return BasicFn::cong(std::move(base), f.gamma(), std::move(h));
    }
    // Res0: value at x = B u is g(residue(B u^{-1} B^{-1}))
    ResFn h(ring, n);
    for (const auto& [code, v] : f.profile().values()) {
        ResMat s = ResMat::decode(ring, n, code);
        if (!s.is_invertible()) continue;
        ResMat r = cj.conj_inv(s).inverse();
        h.set(r, v);
    }
    return BasicFn::res0(std::move(base), std::move(h));
}

// ---------------------------------------------------------------------------
// HeckeElem

HeckeElem HeckeElem::single(BasicFn term) {
    HeckeElem h(term.field(), term.n());
    h.add_term(std::move(term));
    return h;
}

HeckeElem HeckeElem::single(const LaurentX& coeff, BasicFn term) {
    return single(term.scaled(coeff));
}

void HeckeElem::add_term(BasicFn term) {
    if (term.n() != n_) throw DimensionMismatch("hecke element term");
    if (!term.is_zero()) terms_.push_back(std::move(term));
}

HeckeElem HeckeElem::scaled(const LaurentX& c) const {
    HeckeElem r(f_, n_);
    if (c.is_zero()) return r;
    for (const auto& t : terms_) r.add_term(t.scaled(c));
    return r;
}

HeckeElem HeckeElem::plus(const HeckeElem& o) const {
    HeckeElem r(*this);
    for (const auto& t : o.terms_) r.add_term(t);
    return r;
}

LaurentX HeckeElem::eval(const MatF& x) const {
    LaurentX v;
    for (const auto& t : terms_) v += basic_eval(t, x);
    return v;
}

namespace {

// try to rewrite `t` over the base of `anchor` (same support lattice);
// returns the rebased profile on success
std::optional<ResFn> rebase_profile(const BasicFn& anchor, const BasicFn& t, rcode_t budget) {
    unsigned n = anchor.n();
    const FieldRef& fld = anchor.field();
    auto ring = anchor.profile().ring();
    if (anchor.kind() != t.kind()) return std::nullopt;
    if (anchor.kind() == BasicFn::Kind::Cong) {
        if (!(anchor.gamma() == t.gamma())) return std::nullopt;
        if ((anchor.base() - t.base()).eq_exact(MatF(fld, n))) return t.profile();
        if (!anchor.gamma().is_constant()) return std::nullopt;
        int theta = anchor.gamma().at(0, 0);
        MatF c = mat_left_quotient(anchor.base(), t.base());
        if (!c.is_one_mod_t2()) return std::nullopt;
        ResMat zm(ring, n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                FElem e = c.at(i, j);
                if (i == j) e = e - FElem::one(fld);
                e = e.shifted2(-theta);
                if (!e.in_O1()) return std::nullopt;
                EElem r = fe_residue(e);
                if (!r.in_OE()) return std::nullopt; // disjoint residue charts
                zm.at(i, j) = ring->reduce(r);
            }
        // t's support is anchor.base() (I + t2^theta p^{-1}(z + V_t))
        ResFn src = t.profile().full() ? t.profile().materialized(budget) : t.profile();
        return src.translated(zm);
    }
    // Res0 rebase
    MatF c = mat_left_quotient(anchor.base(), t.base());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (!c.at(i, j).in_O1()) return std::nullopt;
    FElem det = mat_det(c);
    if (!det.provably_nonzero() || det.v2() != 0) return std::nullopt;
    ResMat cm(ring, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            EElem r = fe_residue(c.at(i, j));
            if (!r.in_OE()) return std::nullopt;
            cm.at(i, j) = ring->reduce(r);
        }
    if (!cm.is_invertible()) return std::nullopt;
    // value at anchor-based x = A0 u: g_t(residue(C^{-1} u)) = g_t(cm^{-1} R)
    return t.profile().left_translated(cm);
}

} // namespace

HeckeElem HeckeElem::normalized(rcode_t budget) const {
    if (terms_.empty()) return *this;
    unsigned maxlevel = 0;
    for (const auto& t : terms_) maxlevel = std::max(maxlevel, t.level());
    auto ring = ResRing::get(f_->q, maxlevel);

    std::vector<BasicFn> lifted;
    lifted.reserve(terms_.size());
    for (const auto& t : terms_) lifted.push_back(t.lifted(ring, budget));

    std::vector<BasicFn> groups;
    for (const auto& t : lifted) {
        bool merged = false;
        for (auto& g : groups) {
            auto rebased = rebase_profile(g, t, budget);
            if (rebased) {
                ResFn sum = g.profile().full() ? g.profile().materialized(budget) : g.profile();
                sum = sum.plus(rebased->full() ? rebased->materialized(budget) : *rebased);
                g = g.kind() == BasicFn::Kind::Cong
                        ? BasicFn::cong(g.base(), g.gamma(), std::move(sum))
                        : BasicFn::res0(g.base(), std::move(sum));
                merged = true;
                break;
            }
        }
        if (!merged) groups.push_back(t);
    }

    HeckeElem r(f_, n_);
    for (auto& g : groups)
        if (!g.is_zero()) r.terms_.push_back(std::move(g));
    return r;
}

// ---------------------------------------------------------------------------
// integration and convolution

LaurentX integrate_GLn(const BasicFn& f, rcode_t budget) {
    unsigned n = f.n();
    unsigned m = f.level();
    LaurentX sum = f.profile().support_sum(budget);
    Rat unit = rat_pow(f.field()->q, -static_cast<int>(m * n * n));
    LaurentX v = sum.scaled(Coeff(unit));
    if (f.kind() == BasicFn::Kind::Cong) v = v.shifted(f.gamma().sum());
    return v;
}

LaurentX integrate_GLn(const HeckeElem& f, rcode_t budget) {
    LaurentX total;
    for (const auto& t : f.terms()) total += integrate_GLn(t, budget);
    return total;
}

namespace {

BasicFn convolve_res0_res0(const BasicFn& b1, const BasicFn& b2, rcode_t budget) {
    unsigned n = b1.n();
    auto ring = b1.profile().ring();
    unsigned m = ring->level();
    ConjData cj = conj_data(b2.base(), ring);
    Rat unit = rat_pow(b1.field()->q, -static_cast<int>(m * n * n));

    ResFn h(ring, n);
    MatEnumerator en(ring, n, true, budget);
    ResMat s(ring, n);
    while (en.next(s)) {
        LaurentX acc;
        for (const auto& [code, v2] : b2.profile().values()) {
            ResMat r = ResMat::decode(ring, n, code);
            if (!r.is_invertible()) continue;
            LaurentX v1 = b1.profile().value_at(cj.conj(s * r.inverse()));
            if (!v1.is_zero()) acc += v1 * v2;
        }
        if (!acc.is_zero()) h.set(s, acc.scaled(Coeff(unit)));
    }
    return BasicFn::res0(b1.base() * b2.base(), std::move(h));
}

// The product coset decomposes into classes D(I + t2^theta p^{-1}(rho))
// with D = A1 A2 and theta = min(gamma1, gamma2); the class values come
// out of the substitution x = A2 (I + t2^{gamma2} M):
//   gamma1 = gamma2 : h(rho) = X^{g n^2} q^{-m n^2}
//                              sum_R g1(conj(rho - R)) g2(R)
//   gamma1 < gamma2 : h(rho) = g1(conj(rho)) * integral(b2)
//   gamma1 > gamma2 : h(rho) = g2(rho) * integral(b1)
// where conj is residue conjugation by the unit part of A2.
BasicFn convolve_cong_cong(const BasicFn& b1, const BasicFn& b2, rcode_t budget) {
    unsigned n = b1.n();
    auto ring = b1.profile().ring();
    unsigned m = ring->level();
    if (!b1.gamma().is_constant() || !b2.gamma().is_constant())
        throw UnsupportedImageClass("convolution needs constant Gamma data");
    int g1 = b1.gamma().at(0, 0), g2 = b2.gamma().at(0, 0);
    int theta = std::min(g1, g2);
    MatF d = b1.base() * b2.base();
    ConjData cj = conj_data(b2.base(), ring);

    ResFn h(ring, n);
    if (g1 < g2) {
        LaurentX c2 = integrate_GLn(b2, budget);
        auto supp1 = b1.profile().full() ? b1.profile().materialized(budget) : b1.profile();
        for (const auto& [code, v1] : supp1.values()) {
            ResMat rho = cj.conj_inv(ResMat::decode(ring, n, code));
            LaurentX v = v1 * c2;
            if (!v.is_zero()) h.set(rho, std::move(v));
        }
    } else if (g1 > g2) {
        LaurentX c1 = integrate_GLn(b1, budget);
        h = b2.profile().scaled(c1);
    } else {
        auto supp1 = b1.profile().full() ? b1.profile().materialized(budget) : b1.profile();
        auto supp2 = b2.profile().full() ? b2.profile().materialized(budget) : b2.profile();
        Rat unit = rat_pow(b1.field()->q, -static_cast<int>(m * n * n));
        LaurentX fiber = LaurentX::monomial(g1 * static_cast<int>(n * n), Coeff(unit));
        for (const auto& [c1, v1] : supp1.values()) {
            ResMat cu = cj.conj_inv(ResMat::decode(ring, n, c1));
            for (const auto& [c2, v2] : supp2.values()) {
                ResMat rho = cu + ResMat::decode(ring, n, c2);
                h.add(rho, v1 * v2 * fiber);
            }
        }
    }
    return BasicFn::cong(std::move(d), IntMat::constant(n, theta), std::move(h));
}

BasicFn convolve_res0_cong(const BasicFn& b1, const BasicFn& b2, rcode_t budget) {
    // value at y = A1 A2 s: g1(conj_{A2}(sbar)) * integral(b2)
    unsigned n = b1.n();
    auto ring = b1.profile().ring();
    ConjData cj = conj_data(b2.base(), ring);
    LaurentX c2 = integrate_GLn(b2, budget);
    ResFn h(ring, n);
    for (const auto& [code, v] : b1.profile().values()) {
        ResMat s = cj.conj_inv(ResMat::decode(ring, n, code));
        LaurentX val = v * c2;
        if (!val.is_zero()) h.set(s, std::move(val));
    }
    return BasicFn::res0(b1.base() * b2.base(), std::move(h));
}

BasicFn convolve_cong_res0(const BasicFn& b1, const BasicFn& b2, rcode_t budget) {
    LaurentX c1 = integrate_GLn(b1, budget);
    return BasicFn::res0(b1.base() * b2.base(), b2.profile().scaled(c1));
}

} // namespace

HeckeElem convolve(const HeckeElem& f1, const HeckeElem& f2, rcode_t budget) {
    if (f1.n() != f2.n()) throw DimensionMismatch("convolution");
    HeckeElem out(f1.field(), f1.n());
    unsigned maxlevel = 1;
    for (const auto& t : f1.terms()) maxlevel = std::max(maxlevel, t.level());
    for (const auto& t : f2.terms()) maxlevel = std::max(maxlevel, t.level());
    auto ring = ResRing::get(f1.field()->q, maxlevel);

    for (const auto& t1 : f1.terms())
        for (const auto& t2 : f2.terms()) {
            BasicFn a = t1.lifted(ring, budget);
            BasicFn b = t2.lifted(ring, budget);
            using K = BasicFn::Kind;
            BasicFn term = (a.kind() == K::Res0 && b.kind() == K::Res0)
                               ? convolve_res0_res0(a, b, budget)
                           : (a.kind() == K::Cong && b.kind() == K::Cong)
                               ? convolve_cong_cong(a, b, budget)
                           : (a.kind() == K::Res0) ? convolve_res0_cong(a, b, budget)
                                                   : convolve_cong_res0(a, b, budget);
            out.add_term(std::move(term));
        }
    return out.normalized(budget);
}

bool hecke_equal(const HeckeElem& a, const HeckeElem& b, rcode_t budget) {
    HeckeElem d = a.plus(b.scaled(LaurentX(-1)));
    return d.normalized(budget).terms().empty();
}

std::optional<BasicFn> rebase_to(const BasicFn& term, const MatF& new_base, rcode_t budget) {
    BasicFn anchor = term.kind() == BasicFn::Kind::Cong
                         ? BasicFn::cong(new_base, term.gamma(),
                                         ResFn(term.profile().ring(), term.n()))
                         : BasicFn::res0(new_base, ResFn(term.profile().ring(), term.n()));
    auto profile = rebase_profile(anchor, term, budget);
    if (!profile) return std::nullopt;
    if (term.kind() == BasicFn::Kind::Cong)
        return BasicFn::cong(new_base, term.gamma(), std::move(*profile));
    return BasicFn::res0(new_base, std::move(*profile));
}

StructureTable hecke_structure_constants(const std::vector<HeckeElem>& basis, rcode_t budget) {
    StructureTable table;
    table.size = basis.size();
    if (basis.empty()) return table;

    // basis sanity: single char-type terms with pairwise disjoint supports
    std::vector<MatF> rep_points;
    for (const auto& b : basis) {
        if (b.terms().size() != 1)
            throw Error("structure constants need single-term basis elements");
        const BasicFn& t = b.terms()[0];
        ResMat rho(t.profile().ring(), t.n());
        if (!t.profile().full())
            rho = ResMat::decode(t.profile().ring(), t.n(), t.profile().values().begin()->first);
        if (t.kind() == BasicFn::Kind::Cong) {
            rep_points.push_back(lift_coset_point(b.field(), t.base(), t.gamma().at(0, 0), rho));
        } else {
            rep_points.push_back(t.base() * MatF::lift(b.field(), rho));
        }
    }

    table.constants.assign(basis.size(),
                           std::vector<std::vector<LaurentX>>(
                               basis.size(), std::vector<LaurentX>(basis.size())));
    table.remainders.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            HeckeElem p = convolve(basis[i], basis[j], budget);
            HeckeElem remainder = p;
            for (std::size_t k = 0; k < basis.size(); ++k) {
                LaurentX bk_val = basis[k].eval(rep_points[k]);
                if (bk_val.is_zero()) throw Error("degenerate basis element");
                LaurentX pk = p.eval(rep_points[k]);
                if (pk.is_zero()) continue;
                // lambda = pk / bk_val; basis values are monomial by design
                LaurentX lambda;
                if (bk_val == LaurentX::one()) {
                    lambda = pk;
                } else {
                    if (bk_val.terms().size() != 1)
                        throw Error("basis values must be monomial for division");
                    auto [e, c] = *bk_val.terms().begin();
                    lambda = pk.shifted(-e).scaled(Coeff(1) / c);
                }
                table.constants[i][j][k] = lambda;
                remainder = remainder.plus(basis[k].scaled(lambda).scaled(LaurentX(-1)));
            }
            table.remainders[i].push_back(remainder.normalized(budget));
        }
    return table;
}

} // namespace hlf
