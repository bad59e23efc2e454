#include "hlf/repr.hpp"

#include <sstream>

namespace hlf {

namespace {

// residue conjugation data for a normalizing base (identity at n = 1)
struct RepConj {
    ResMat u, uinv;
    ResMat conj(const ResMat& r) const { return u * r * uinv; }
    ResMat conj_by_inverse(const ResMat& r) const { return uinv * r * u; }
};

RepConj rep_conj(const MatF& a, const ResRingPtr& ring) {
    unsigned n = a.n();
    if (n == 1) {
        ResMat id = ResMat::identity(ring, 1);
        return RepConj{id, id};
    }
    FElem det = mat_det(a);
    if (!det.provably_nonzero()) throw SingularAtPrecision("conjugation by a singular matrix");
    int v = det.v2();
    if (v % static_cast<int>(n) != 0)
        throw UnsupportedImageClass("base outside the normalizing class");
    MatF unit = a.shifted2(-v / static_cast<int>(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (!unit.at(i, j).in_O2())
                throw UnsupportedImageClass("base outside the normalizing class");
    if (!mat_det(unit).unit_O2()) throw UnsupportedImageClass("base outside the normalizing class");
    ResMat um = unit.residue(ring);
    return RepConj{um, um.inverse()};
}

} // namespace

SubgroupDescriptor SubgroupDescriptor::congruence(IntMat gamma, ResRingPtr ring,
                                                  std::set<rcode_t> h) {
    SubgroupDescriptor d;
    d.kind = Kind::Congruence;
    d.n = gamma.n();
    d.gamma = std::move(gamma);
    d.ring = std::move(ring);
    d.h = std::move(h);
    if (d.gamma.min_entry() < 1) throw UnsupportedImageClass("congruence subgroup needs Gamma >= 1");
    return d;
}

SubgroupDescriptor SubgroupDescriptor::residue(unsigned n, ResRingPtr ring, std::set<rcode_t> h) {
    SubgroupDescriptor d;
    d.kind = Kind::Residue;
    d.n = n;
    d.ring = std::move(ring);
    d.h = std::move(h);
    return d;
}

bool SubgroupDescriptor::contains(const MatF& x) const {
    unsigned nn = x.n();
    if (nn != n) throw DimensionMismatch("subgroup membership");
    const FieldRef& f = x.field();
    if (kind == Kind::Trivial) return (x - MatF::identity(f, nn)).eq_exact(MatF(f, nn));
    if (kind == Kind::Congruence) {
        ResMat w(ring, nn);
        for (unsigned i = 0; i < nn; ++i)
            for (unsigned j = 0; j < nn; ++j) {
                FElem e = x.at(i, j);
                if (i == j) e = e - FElem::one(f);
                e = e.shifted2(-gamma.at(i, j));
                if (!e.in_O1()) return false;
                EElem r = fe_residue(e);
                if (!r.in_OE()) return false;
                w.at(i, j) = ring->reduce(r);
            }
        return h.count(w.encode()) > 0;
    }
    // Residue kind
    for (unsigned i = 0; i < nn; ++i)
        for (unsigned j = 0; j < nn; ++j)
            if (!x.at(i, j).in_O1()) return false;
    FElem det = mat_det(x);
    if (!det.provably_nonzero() || det.v2() != 0) return false;
    ResMat r(ring, nn);
    for (unsigned i = 0; i < nn; ++i)
        for (unsigned j = 0; j < nn; ++j) {
            EElem e = fe_residue(x.at(i, j));
            if (!e.in_OE()) return false;
            r.at(i, j) = ring->reduce(e);
        }
    return h.count(r.encode()) > 0;
}

bool SubgroupDescriptor::is_group_at_level() const {
    if (kind == Kind::Trivial) return true;
    if (kind == Kind::Congruence) {
        // additive closure with 0
        if (h.count(0) == 0) return false;
        for (rcode_t a : h) {
            ResMat ma = ResMat::decode(ring, n, a);
            if (h.count((-ma).encode()) == 0) return false;
            for (rcode_t b : h)
                if (h.count((ma + ResMat::decode(ring, n, b)).encode()) == 0) return false;
        }
        return true;
    }
    // multiplicative closure with identity and inverses
    if (h.count(ResMat::identity(ring, n).encode()) == 0) return false;
    for (rcode_t a : h) {
        ResMat ma = ResMat::decode(ring, n, a);
        if (!ma.is_invertible()) return false;
        if (h.count(ma.inverse().encode()) == 0) return false;
        for (rcode_t b : h)
            if (h.count((ma * ResMat::decode(ring, n, b)).encode()) == 0) return false;
    }
    return true;
}

BasicFn SubgroupDescriptor::char_fn(FieldRef f) const {
    if (kind == Kind::Trivial) {
        // a single point has measure zero: its char integrates to 0, so
        // the zero profile is the integrable stand-in
        auto r1 = ResRing::get(f->q, 1);
        return BasicFn::cong(MatF::identity(f, n), IntMat::constant(n, 1), ResFn(r1, n));
    }
    ResFn g(ring, n);
    for (rcode_t c : h) g.set(ResMat::decode(ring, n, c), LaurentX::one());
    if (kind == Kind::Congruence) return BasicFn::cong(MatF::identity(f, n), gamma, std::move(g));
    return BasicFn::res0(MatF::identity(f, n), std::move(g));
}

std::string SubgroupDescriptor::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Trivial:
            os << "{I_" << n << "}";
            break;
        case Kind::Congruence:
            os << "I_" << n << " + t2^" << gamma.at(0, 0) << "*p^-1(H), |H|=" << h.size()
               << " @level " << ring->level();
            break;
        case Kind::Residue:
            os << "p^-1(H) in GL_" << n << "(O1), |H|=" << h.size() << " @level "
               << ring->level();
            break;
    }
    return os.str();
}

RepElement translate_action(const MatF& h, const RepElement& v) {
    RepElement r(v.field(), v.n());
    for (const auto& t : v.terms()) r.add_term(t.with_base(h * t.base()));
    return r;
}

RepElement hecke_action(const HeckeElem& f, const RepElement& v, rcode_t budget) {
    return convolve(f, v, budget);
}

namespace {

const BasicFn& single_term(const RepElement& v) {
    if (v.terms().size() != 1)
        throw Error("operation expects a single-term vector (normalize first)");
    return v.terms()[0];
}

} // namespace

SubgroupDescriptor stabilizer(const RepElement& v, rcode_t budget) {
    const BasicFn& t = single_term(v);
    unsigned n = t.n();
    const FieldRef& f = v.field();
    auto id = MatF::identity(f, n);
    auto rebased = rebase_to(t, id, budget);
    if (!rebased) return SubgroupDescriptor::trivial(n);
    const BasicFn& t0 = *rebased;
    auto ring = t0.profile().ring();

    if (t0.kind() == BasicFn::Kind::Cong) {
        if (!t0.gamma().is_constant())
            throw UnsupportedImageClass("stabilizer search needs constant Gamma");
        ResFn g = t0.profile().full() ? t0.profile().materialized(budget) : t0.profile();
        std::set<rcode_t> h;
        MatEnumerator en(ring, n, false, budget);
        ResMat s(ring, n);
        while (en.next(s))
            if (g.translated(s) == g) h.insert(s.encode());
        return SubgroupDescriptor::congruence(t0.gamma(), ring, std::move(h));
    }

    ResFn g = t0.profile();
    std::set<rcode_t> h;
    MatEnumerator en(ring, n, true, budget);
    ResMat s(ring, n);
    while (en.next(s))
        if (g.left_translated(s) == g) h.insert(s.encode());
    return SubgroupDescriptor::residue(n, ring, std::move(h));
}

SubgroupDescriptor bi_invariance_group(const RepElement& v, rcode_t budget) {
    if (v.terms().empty()) {
        // empty support: invariance is vacuous, the whole level-1 residue
        // space qualifies
        auto ring = ResRing::get(v.field()->q, 1);
        std::set<rcode_t> h;
        MatEnumerator en(ring, v.n(), false, budget);
        ResMat s(ring, v.n());
        while (en.next(s)) h.insert(s.encode());
        return SubgroupDescriptor::congruence(IntMat::constant(v.n(), 1), ring, std::move(h));
    }
    const BasicFn& t = single_term(v);
    unsigned n = t.n();
    const FieldRef& f = v.field();
    auto rebased = rebase_to(t, MatF::identity(f, n), budget);
    if (!rebased) throw Error("bi-invariance group needs a vector based at the identity");
    const BasicFn& t0 = *rebased;
    auto ring = t0.profile().ring();

    if (t0.kind() == BasicFn::Kind::Cong) {
        if (!t0.gamma().is_constant())
            throw UnsupportedImageClass("bi-invariance search needs constant Gamma");
        // left and right shifts both act additively on residues, so the
        // two-sided group coincides with the translation stabilizer
        ResFn g = t0.profile().full() ? t0.profile().materialized(budget) : t0.profile();
        std::set<rcode_t> h;
        MatEnumerator en(ring, n, false, budget);
        ResMat s(ring, n);
        while (en.next(s))
            if (g.translated(s) == g) h.insert(s.encode());
        return SubgroupDescriptor::congruence(t0.gamma(), ring, std::move(h));
    }

    ResFn g = t0.profile();
    std::set<rcode_t> h;
    MatEnumerator en(ring, n, true, budget);
    ResMat s(ring, n);
    while (en.next(s))
        if (g.left_translated(s) == g && g.right_translated(s) == g) h.insert(s.encode());
    return SubgroupDescriptor::residue(n, ring, std::move(h));
}

bool in_double_coset(const SubgroupDescriptor& m, const MatF& rep, const MatF& y, rcode_t budget) {
    (void)budget;
    unsigned n = rep.n();
    const FieldRef& f = rep.field();
    if (m.kind == SubgroupDescriptor::Kind::Trivial) return (y - rep).eq_exact(MatF(f, n));

    if (m.kind == SubgroupDescriptor::Kind::Congruence) {
        // M rep M = rep (I + t2^theta p^{-1}(conj_{rep^{-1}}(H) + H))
        int theta = m.gamma.at(0, 0);
        RepConj cj = rep_conj(rep, m.ring);
        std::set<rcode_t> s;
        for (rcode_t a : m.h) {
            ResMat ca = cj.conj_by_inverse(ResMat::decode(m.ring, n, a));
            for (rcode_t b : m.h) s.insert((ca + ResMat::decode(m.ring, n, b)).encode());
        }
        SubgroupDescriptor combined =
            SubgroupDescriptor::congruence(IntMat::constant(n, theta), m.ring, std::move(s));
        return combined.contains(mat_left_quotient(rep, y));
    }

    // Residue kind: M rep M = rep (conj_{rep^{-1}}(H) * H) as residue classes
    RepConj cj = rep_conj(rep, m.ring);
    std::set<rcode_t> s;
    for (rcode_t a : m.h) {
        ResMat ca = cj.conj_by_inverse(ResMat::decode(m.ring, n, a));
        for (rcode_t b : m.h) s.insert((ca * ResMat::decode(m.ring, n, b)).encode());
    }
    SubgroupDescriptor combined = SubgroupDescriptor::residue(n, m.ring, std::move(s));
    return combined.contains(mat_left_quotient(rep, y));
}

DoubleCosetDecomposition double_coset_decompose(const RepElement& v, const SubgroupDescriptor& m,
                                                int bound, rcode_t budget) {
    DoubleCosetDecomposition out;
    const FieldRef& f = v.field();
    unsigned n = v.n();

    std::vector<std::pair<MatF, LaurentX>> candidates;
    for (const auto& t : v.terms()) {
        ResFn profile = t.profile().full() ? t.profile().materialized(budget) : t.profile();
        for (const auto& [code, val] : profile.values()) {
            ResMat rho = ResMat::decode(profile.ring(), n, code);
            MatF rep = t.kind() == BasicFn::Kind::Cong
                           ? t.base() * (MatF::identity(f, n) +
                                         MatF::lift(f, rho).shifted2(t.gamma().at(0, 0)))
                           : t.base() * MatF::lift(f, rho);
            // valuation bound on the representative entries
            bool within = true;
            for (unsigned i = 0; i < n && within; ++i)
                for (unsigned j = 0; j < n && within; ++j) {
                    const FElem& e = rep.at(i, j);
                    if (e.provably_nonzero() && std::abs(e.v2()) > bound) within = false;
                }
            if (!within) {
                out.truncated = true;
                continue;
            }
            candidates.emplace_back(std::move(rep), val);
        }
    }

    for (auto& [rep, val] : candidates) {
        bool seen = false;
        for (const auto& dc : out.terms)
            if (in_double_coset(m, dc.rep, rep, budget)) {
                seen = true;
                break;
            }
        if (!seen) out.terms.push_back(DoubleCosetTerm{rep, v.eval(rep)});
    }
    return out;
}

} // namespace hlf
