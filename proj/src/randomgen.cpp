#include "hlf/randomgen.hpp"

namespace hlf {

EElem random_epoly(const FieldRef& f, Rng& rng, int lo, int hi, bool nonzero) {
    std::vector<gf_t> coeffs;
    for (int e = lo; e <= hi; ++e) coeffs.push_back(rng.coin() ? rng.gf(f->q) : 0);
    EElem r = EElem::from_coeffs(f, lo, std::move(coeffs));
    if (nonzero && r.provably_zero()) {
        int e = rng.uniform(lo, hi);
        return EElem::from_coeffs(f, e, {rng.gf_nonzero(f->q)});
    }
    return r;
}

FElem random_fpoly(const FieldRef& f, Rng& rng, int lo2, int hi2, int lo1, int hi1, bool nonzero) {
    std::vector<EElem> coeffs;
    for (int e = lo2; e <= hi2; ++e)
        coeffs.push_back(rng.coin() ? random_epoly(f, rng, lo1, hi1, false) : EElem::zero(f));
    FElem r = FElem::from_coeffs(f, lo2, std::move(coeffs));
    if (nonzero && r.provably_zero()) {
        int e = rng.uniform(lo2, hi2);
        return FElem::monomial(e, random_epoly(f, rng, lo1, hi1, true));
    }
    return r;
}

FElem random_unit_O2(const FieldRef& f, Rng& rng) {
    std::vector<gf_t> head{rng.gf_nonzero(f->q)};
    for (int e = 1; e <= 2; ++e) head.push_back(rng.coin() ? rng.gf(f->q) : 0);
    EElem c0 = EElem::from_coeffs(f, 0, std::move(head));
    FElem tail = random_fpoly(f, rng, 1, 2, -1, 1, false);
    return FElem::from_e(std::move(c0)) + tail;
}

FElem random_in_dist(const FieldRef& f, Rng& rng, int gamma, int delta) {
    EElem head = random_epoly(f, rng, delta, delta + 2, false);
    FElem deeper = random_fpoly(f, rng, gamma + 1, gamma + 2, -2, 2, false);
    return FElem::monomial(gamma, std::move(head)) + deeper;
}

FElem random_in_ball(const FieldRef& f, Rng& rng, int gamma) {
    return random_fpoly(f, rng, gamma, gamma + 2, -2, 2, false);
}

ResMat random_resmat(Rng& rng, const ResRingPtr& ring, unsigned n, bool invertible) {
    for (int tries = 0; tries < 4096; ++tries) {
        ResMat m(ring, n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                m.at(i, j) = static_cast<rcode_t>(
                    rng.uniform(0, static_cast<int>(ring->size()) - 1));
        if (!invertible || m.is_invertible()) return m;
    }
    throw Error("failed to sample an invertible residue matrix");
}

MatF random_gl_O2(const FieldRef& f, Rng& rng, unsigned n, unsigned m) {
    auto ring = ResRing::get(f->q, m);
    ResMat r = random_resmat(rng, ring, n, true);
    MatF lift = MatF::lift(f, r);
    MatF tail(f, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (rng.coin()) tail.at(i, j) = random_fpoly(f, rng, 1, 2, -1, 1, false);
    return lift + tail;
}

MatF random_normalizing(const FieldRef& f, Rng& rng, unsigned n, unsigned m, int t2min,
                        int t2max) {
    return random_gl_O2(f, rng, n, m).shifted2(rng.uniform(t2min, t2max));
}

LaurentX random_laurent(Rng& rng, int xmin, int xmax) {
    LaurentX v;
    int e = rng.uniform(xmin, xmax);
    int num = rng.uniform(-4, 4);
    if (num == 0) num = 1;
    int den = rng.uniform(1, 4);
    v += LaurentX::monomial(e, Coeff(Rat(num, den)));
    if (rng.coin()) {
        int e2 = rng.uniform(xmin, xmax);
        int n2 = rng.uniform(1, 3);
        if (e2 != e) v += LaurentX::monomial(e2, Coeff(Rat(n2)));
    }
    return v;
}

DistinguishedSet random_dist_set(const FieldRef& f, Rng& rng, int grange, int drange) {
    int gamma = rng.uniform(-grange, grange);
    int delta = rng.uniform(-drange, drange);
    FElem center = random_fpoly(f, rng, gamma - 2, gamma, delta - 2, delta + 2, false);
    return DistinguishedSet(center, gamma, delta);
}

SimpleFn random_box_simplefn(const FieldRef& f, Rng& rng, unsigned n, int terms) {
    SimpleFn fn(f, n);
    for (int t = 0; t < terms; ++t) {
        std::vector<FElem> a;
        std::vector<int> gamma;
        std::vector<EBall> balls;
        for (unsigned i = 0; i < n; ++i) {
            int g = rng.uniform(-2, 2);
            gamma.push_back(g);
            a.push_back(random_fpoly(f, rng, g - 2, g - 1, -2, 2, false));
            balls.emplace_back(random_epoly(f, rng, -1, 1, false), rng.uniform(0, 2));
        }
        EFunction g = EFunction::boxes(
            f, n, {EFunction::Term{random_laurent(rng, -1, 1), EBox{std::move(balls)}}});
        fn.add_term(SimpleTerm{std::move(g), std::move(a), std::move(gamma), rng.uniform(-1, 1)});
    }
    return fn;
}

ResFn random_char_profile(Rng& rng, const ResRingPtr& ring, unsigned n, int max_classes,
                          bool invertible_only, rcode_t budget) {
    (void)budget;
    ResFn g(ring, n);
    int count = rng.uniform(1, max_classes);
    for (int i = 0; i < count; ++i)
        g.set(random_resmat(rng, ring, n, invertible_only), LaurentX::one());
    return g;
}

BasicFn random_cong_fn(const FieldRef& f, Rng& rng, unsigned n, unsigned m, int gamma_max,
                       rcode_t budget) {
    auto ring = ResRing::get(f->q, m);
    MatF base = random_normalizing(f, rng, n, m, -1, 1);
    int gamma = rng.uniform(1, gamma_max);
    if (rng.uniform(0, 3) == 0)
        return BasicFn::cong(std::move(base), IntMat::constant(n, gamma),
                             ResFn::constant_full(ring, n, random_laurent(rng, 0, 1)));
    ResFn g = random_char_profile(rng, ring, n, 3, false, budget);
    if (rng.coin()) g = g.scaled(random_laurent(rng, -1, 1));
    return BasicFn::cong(std::move(base), IntMat::constant(n, gamma), std::move(g));
}

BasicFn random_res0_fn(const FieldRef& f, Rng& rng, unsigned n, unsigned m, rcode_t budget) {
    auto ring = ResRing::get(f->q, m);
    MatF base = random_normalizing(f, rng, n, m, -1, 1);
    ResFn g = random_char_profile(rng, ring, n, 3, true, budget);
    if (rng.coin()) g = g.scaled(random_laurent(rng, -1, 1));
    return BasicFn::res0(std::move(base), std::move(g));
}

HeckeElem random_hecke(const FieldRef& f, Rng& rng, unsigned n, unsigned m, int terms,
                       rcode_t budget) {
    HeckeElem h(f, n);
    for (int t = 0; t < terms; ++t) {
        if (rng.coin())
            h.add_term(random_cong_fn(f, rng, n, m, 2, budget));
        else
            h.add_term(random_res0_fn(f, rng, n, m, budget));
    }
    return h;
}

MatF random_support_point(const BasicFn& fn, Rng& rng, rcode_t budget) {
    const FieldRef& f = fn.field();
    unsigned n = fn.n();
    auto ring = fn.profile().ring();
    ResFn profile = fn.profile().full() ? fn.profile().materialized(budget) : fn.profile();
    if (profile.values().empty()) throw Error("sampling from an empty support");
    // pick a support class uniformly
    int idx = rng.uniform(0, static_cast<int>(profile.values().size()) - 1);
    auto it = profile.values().begin();
    std::advance(it, idx);
    ResMat rho = ResMat::decode(ring, n, it->first);

    if (fn.kind() == BasicFn::Kind::Cong) {
        // x = A (I + t2^Gamma (lift(rho) + t1^m-noise + t2-noise))
        MatF noise(f, n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                FElem deep = random_fpoly(f, rng, 1, 2, -2, 2, false);
                EElem fine = random_epoly(f, rng, static_cast<int>(ring->level()),
                                          static_cast<int>(ring->level()) + 1, false);
                noise.at(i, j) = (FElem::from_e(fine) + deep)
                                     .shifted2(fn.gamma().at(i, j));
            }
        MatF m = MatF::lift(f, rho);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                m.at(i, j) = m.at(i, j).shifted2(fn.gamma().at(i, j)) + noise.at(i, j);
        return fn.base() * (MatF::identity(f, n) + m);
    }
    // Res0: x = A (lift(rho) + t1^m-noise + t2-noise)
    MatF u = MatF::lift(f, rho);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            EElem fine = random_epoly(f, rng, static_cast<int>(ring->level()),
                                      static_cast<int>(ring->level()) + 1, false);
            FElem deep = random_fpoly(f, rng, 1, 2, -2, 2, false);
            u.at(i, j) = u.at(i, j) + FElem::from_e(fine) + deep;
        }
    return fn.base() * u;
}

} // namespace hlf
