#include "hlf/verify.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>

namespace hlf {

namespace {

struct Check {
    bool pass = true;
    int cases = 0;
    std::ostringstream detail;

    void fail(const std::string& what) {
        if (pass) detail << what;
        pass = false;
    }
    bool expect(bool cond, const std::string& what) {
        ++cases;
        if (!cond) fail(what);
        return cond;
    }
};

int n_cases(const VerifyOptions& opt, int dflt) { return opt.cases > 0 ? opt.cases : dflt; }

// ------------------------------------------------------------------ laurent

void suite_laurent_ring(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    int cases = n_cases(opt, 200);
    for (int c = 0; c < cases; ++c) {
        LaurentX a = random_laurent(rng, -3, 3);
        LaurentX b = random_laurent(rng, -3, 3);
        LaurentX d = random_laurent(rng, -3, 3);
        ck.expect((a + b) * d == a * d + b * d, "distributivity failed: a=" + lx_render(a) +
                                                    " b=" + lx_render(b) + " d=" + lx_render(d));
        ck.expect((a * b) * d == a * (b * d), "associativity failed");
        ck.expect(a + b == b + a && a * b == b * a, "commutativity failed");
        ck.expect(lx_parse(lx_render(a)) == a, "render/parse roundtrip failed: " + lx_render(a));
    }
    for (unsigned q : {2u, 3u})
        for (int x1 = -10; x1 <= 10; x1 += 2)
            for (int e1 = -10; e1 <= 10; e1 += 2) {
                Monomial m1{x1, e1}, m2{-x1 + 1, e1 - 3};
                ck.expect((m1 * m2).to_laurent(q) == m1.to_laurent(q) * m2.to_laurent(q),
                          "monomial embedding not multiplicative");
            }
}

// ------------------------------------------------------------------ field

void suite_field_abs(const VerifyOptions& opt, Check& ck) {
    auto f = FieldConfig::make(3, 10, 10);
    Rng rng(opt.seed);
    int cases = n_cases(opt, 500);
    for (int c = 0; c < cases; ++c) {
        FElem a = random_fpoly(f, rng, -2, 2, -2, 2, true);
        FElem b = random_fpoly(f, rng, -2, 2, -2, 2, true);
        Monomial prod = fe_abs(a * b);
        Monomial split = fe_abs(a) * fe_abs(b);
        ck.expect(prod == split, "|ab| != |a||b| at a=" + a.str() + " b=" + b.str());

        auto dec = fe_unit_decompose(a);
        FElem recomposed = FElem::t2_pow(f, dec.v2) * FElem::t1_pow(f, dec.v1) * dec.unit;
        ck.expect(recomposed.eq_exact(a), "unit decomposition does not recompose: " + a.str());
        ck.expect(dec.unit.unit_O2(), "unit part is not a unit of O");

        FElem inv = a.inv();
        ck.expect((a * inv).agrees(FElem::one(f)), "a * a^{-1} != 1 within window");
        ck.expect((inv * a).agrees(FElem::one(f)), "a^{-1} * a != 1 within window");
    }
    // residue is a ring homomorphism on integral elements
    for (int c = 0; c < cases / 2; ++c) {
        FElem a = random_fpoly(f, rng, 0, 2, -2, 2, false);
        FElem b = random_fpoly(f, rng, 0, 2, -2, 2, false);
        ck.expect(fe_residue(a * b) == fe_residue(a) * fe_residue(b),
                  "residue not multiplicative");
        ck.expect(fe_residue(a + b) == fe_residue(a) + fe_residue(b), "residue not additive");
    }
}

// ------------------------------------------------------------------ matrices

void suite_matrix(const VerifyOptions& opt, Check& ck) {
    auto f = FieldConfig::make(2, 8, 8);
    Rng rng(opt.seed);
    int cases = n_cases(opt, 40);
    for (int c = 0; c < cases; ++c) {
        unsigned n = rng.coin() ? 2 : 3;
        MatF a = random_gl_O2(f, rng, n, 1).shifted2(rng.uniform(-1, 1));
        MatF b = random_gl_O2(f, rng, n, 1);
        ck.expect(fe_abs(mat_det(a * b)) == fe_abs(mat_det(a)) * fe_abs(mat_det(b)),
                  "|det(AB)| != |det A| |det B|");
        MatF inv = mat_inv(a);
        ck.expect((a * inv).agrees(MatF::identity(f, n)), "A A^{-1} != I within window");

        // det(I + t2 N) has absolute value 1 for integral N
        MatF nmat(f, n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) nmat.at(i, j) = random_in_ball(f, rng, 0);
        MatF one_plus = MatF::identity(f, n) + nmat.shifted2(1);
        Monomial abs = fe_abs(mat_det(one_plus));
        ck.expect(abs == Monomial{0, 0}, "|det(I + t2 N)| != 1");
        MatF neum = neumann_inv(one_plus);
        ck.expect((one_plus * neum).agrees(MatF::identity(f, n)), "Neumann inverse failed");

        // Smith form over the rank-one ring: scale whole rows by t2
        // powers to vary the elementary divisors
        MatF s = random_gl_O2(f, rng, n, 1);
        for (unsigned i = 0; i < n; ++i) {
            int shift = rng.uniform(0, 2);
            for (unsigned j = 0; j < n; ++j) s.at(i, j) = s.at(i, j).shifted2(shift);
        }
        SmithForm sf = smith_form(s);
        ck.expect((sf.u * sf.d * sf.v).agrees(s), "Smith recomposition failed");
        ck.expect(sf.u.in_GLO1() && sf.v.in_GLO1(), "Smith factors not in GL_n(O1)");
        ck.expect(std::is_sorted(sf.exponents.begin(), sf.exponents.end()),
                  "Smith exponents not ascending");
    }
    // enumeration count vs the closed-form group order
    for (unsigned q : {2u, 3u})
        for (unsigned n : {1u, 2u})
            for (unsigned m : {1u, 2u}) {
                if (q == 3 && n == 2 && m == 2) continue; // beyond the default budget
                auto reps = congruence_enumerate(q, n, CongLevel(m), 1u << 24);
                ck.expect(Int(reps.size()) == gl_order(q, m, n),
                          "enumeration count mismatch at q=" + std::to_string(q) +
                              " n=" + std::to_string(n) + " m=" + std::to_string(m));
            }
}

// ------------------------------------------------------------------ measure

void suite_measure_formula(const VerifyOptions& opt, Check& ck) {
    (void)opt;
    for (unsigned q : {2u, 3u}) {
        auto f = FieldConfig::make(q, 8, 8);
        for (int i = -3; i <= 3; ++i)
            for (int j = -3; j <= 3; ++j) {
                DistBox box{{DistinguishedSet(FElem::zero(f), i, j)}};
                SetRingElem s = ring_normalize(SetExpr::make_leaf(box), q);
                LaurentX mu = dist_measure(s, q);
                LaurentX expect = Monomial{i, j}.to_laurent(q);
                ck.expect(mu == expect, "mu(t2^i t1^j O) mismatch at q=" + std::to_string(q) +
                                            " i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                            ": " + lx_render(mu) + " vs " + lx_render(expect));
            }
    }
}

void suite_additivity(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    int cases = n_cases(opt, 100);
    for (unsigned q : {2u, 3u}) {
        auto f = FieldConfig::make(q, 8, 8);
        // O as the union of its residue classes c + t1 O
        std::vector<SetExpr> parts;
        for (gf_t c = 0; c < q; ++c)
            parts.push_back(SetExpr::make_leaf(
                DistBox{{DistinguishedSet(FElem::from_e(EElem::from_gf(f, c)), 0, 1)}}));
        SetRingElem u = ring_normalize(SetExpr::make_union(parts), q);
        ck.expect(dist_measure(u, q) == LaurentX::one(), "residue partition of O must sum to 1");
        GuardedFamily fam;
        fam.floor = 0;
        for (gf_t c = 0; c < q; ++c) fam.add(Monomial{0, 1}.to_laurent(q));
        ck.expect(lx_guarded_sum(fam) == LaurentX::one(), "guarded partition sum failed");
    }
    // randomized refinements
    auto f = FieldConfig::make(3, 8, 8);
    unsigned q = 3;
    for (int c = 0; c < cases; ++c) {
        DistinguishedSet parent = random_dist_set(f, rng, 2, 2);
        int fine = parent.delta + rng.uniform(1, 2);
        GuardedFamily fam;
        fam.floor = parent.gamma;
        std::vector<SetExpr> parts;
        // children: parent center + t2^gamma r over residues r
        std::vector<gf_t> digits(static_cast<std::size_t>(fine - parent.delta), 0);
        while (true) {
            EElem off = EElem::from_coeffs(f, parent.delta, digits);
            DistinguishedSet child(parent.a + FElem::monomial(parent.gamma, off), parent.gamma,
                                   fine);
            fam.add(child.measure().to_laurent(q));
            parts.push_back(SetExpr::make_leaf(DistBox{{child}}));
            bool carried = false;
            for (auto& d : digits) {
                if (d + 1 < q) {
                    ++d;
                    carried = true;
                    break;
                }
                d = 0;
            }
            if (!carried) break;
        }
        ck.expect(lx_guarded_sum(fam) == parent.measure().to_laurent(q),
                  "refinement does not sum to the parent measure");
        SetRingElem u = ring_normalize(SetExpr::make_union(parts), q);
        ck.expect(dist_measure(u, q) == parent.measure().to_laurent(q),
                  "normalized refinement union has wrong measure");
    }
}

void suite_invariance(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    auto f = FieldConfig::make(2, 10, 10);
    unsigned q = 2;
    int cases = n_cases(opt, 200);
    for (int c = 0; c < cases; ++c) {
        // a set-ring element: one distinguished set minus a t1-refined hole
        DistinguishedSet base = random_dist_set(f, rng, 2, 1);
        DistinguishedSet hole(base.a, base.gamma, base.delta + 1);
        SetExpr expr = SetExpr::make_diff(SetExpr::make_leaf(DistBox{{base}}),
                                          {SetExpr::make_leaf(DistBox{{hole}})});
        LaurentX mu = dist_measure(ring_normalize(expr, q), q);

        FElem shift = random_fpoly(f, rng, -2, 2, -2, 2, false);
        DistinguishedSet tbase(base.a + shift, base.gamma, base.delta);
        DistinguishedSet thole(hole.a + shift, hole.gamma, hole.delta);
        SetExpr texpr = SetExpr::make_diff(SetExpr::make_leaf(DistBox{{tbase}}),
                                           {SetExpr::make_leaf(DistBox{{thole}})});
        ck.expect(dist_measure(ring_normalize(texpr, q), q) == mu,
                  "translation changed a measure");

        FElem g = random_fpoly(f, rng, -2, 2, -2, 2, true);
        auto dec = fe_unit_decompose(g);
        DistinguishedSet sbase(g * base.a, base.gamma + dec.v2, base.delta + dec.v1);
        DistinguishedSet shole(g * hole.a, hole.gamma + dec.v2, hole.delta + dec.v1);
        SetExpr sexpr = SetExpr::make_diff(SetExpr::make_leaf(DistBox{{sbase}}),
                                           {SetExpr::make_leaf(DistBox{{shole}})});
        LaurentX smu = dist_measure(ring_normalize(sexpr, q), q);
        ck.expect(smu == fe_abs(g).to_laurent(q) * mu, "scaling law mu(gS) = |g| mu(S) failed");
    }
}

// ------------------------------------------------------------------ integration

void suite_fubini(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    auto f = FieldConfig::make(2, 8, 8);
    int cases = n_cases(opt, 50);
    for (unsigned n : {2u, 3u}) {
        std::vector<std::vector<unsigned>> orders;
        std::vector<unsigned> perm(n);
        for (unsigned i = 0; i < n; ++i) perm[i] = i;
        do {
            orders.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));

        for (int c = 0; c < cases; ++c) {
            SimpleFn fn = random_box_simplefn(f, rng, n, rng.uniform(1, 2));
            LaurentX ref = integrate_Fn(fn, orders[0]);
            for (std::size_t o = 1; o < orders.size(); ++o)
                ck.expect(integrate_Fn(fn, orders[o]) == ref,
                          "integration order changed the value (n=" + std::to_string(n) + ")");
            // translation invariance
            std::vector<FElem> shift;
            for (unsigned i = 0; i < n; ++i)
                shift.push_back(random_fpoly(f, rng, -2, 2, -2, 2, false));
            ck.expect(integrate_Fn(fn.translated(shift)) == ref,
                      "translation changed an integral");
        }
    }
}

void suite_change_of_variables(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    auto f = FieldConfig::make(2, 10, 10);
    int cases = n_cases(opt, 50);
    for (int c = 0; c < cases; ++c) {
        unsigned n = rng.coin() ? 2 : 3;
        SimpleFn fn = random_box_simplefn(f, rng, n, 1);
        // random monomial matrix: permutation times diagonal
        std::vector<unsigned> perm(n);
        for (unsigned i = 0; i < n; ++i) perm[i] = i;
        for (unsigned i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[static_cast<unsigned>(rng.uniform(0, static_cast<int>(i)))]);
        MatF tau(f, n);
        for (unsigned i = 0; i < n; ++i)
            tau.at(i, perm[i]) = random_fpoly(f, rng, -2, 2, -2, 2, true);

        auto res = transform_linear(fn, tau);
        LaurentX direct = integrate_Fn(res.image);
        ck.expect(direct == res.integral, "symbolic image integral disagrees with |det| route");
        Monomial absdet = fe_abs(mat_det(tau));
        ck.expect(res.integral == absdet.inverse().to_laurent(f->q) * integrate_Fn(fn),
                  "|det tau|^{-1} scaling violated");
    }
}

void suite_gl_bridge(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    auto f = FieldConfig::make(2, 8, 8);
    int cases = n_cases(opt, 20);
    for (unsigned n : {1u, 2u}) {
        auto ring = ResRing::get(2, 1);
        for (int c = 0; c < cases; ++c) {
            ResFn g = random_char_profile(rng, ring, n, n == 1 ? 1 : 4, true, opt.budget);
            if (rng.coin()) g = g.scaled(random_laurent(rng, 0, 1));
            LaurentX f_side = integrate_GLn(BasicFn::res_zero(f, n, g), opt.budget);
            LaurentX e_side = haar_E(EFunction::gl_classes(f, g), opt.budget);
            ck.expect(f_side == e_side, "GL bridge mismatch at n=" + std::to_string(n));
            // third route through exact E-matrices: per class, the lift is
            // in GL_n(O_E) with unit determinant, so each class weighs
            // q^{-m n^2}
            LaurentX e_exact;
            for (const auto& [code, val] : g.values()) {
                MatE lift = MatE::from_residue(f, ResMat::decode(ring, n, code));
                if (!ck.expect(lift.in_GL_OE(), "support lift not in GL_n(O_E)")) return;
                e_exact += val.scaled(Coeff(rat_pow(2, -static_cast<int>(n * n))));
            }
            ck.expect(f_side == e_exact, "GL bridge disagrees with the exact E-matrix route");
            if (n == 1) {
                // third route through the distinguished-set measure of the fibers
                LaurentX via_sets;
                for (const auto& [code, val] : g.values()) {
                    EElem lift = ring->lift(f, code);
                    DistBox fiber{{DistinguishedSet(FElem::from_e(lift), 0, 1)}};
                    via_sets += val * fiber.measure(2);
                }
                ck.expect(f_side == via_sets, "GL_1 bridge disagrees with fiber measures");
            }
        }
    }
    // the worked constant: char_{GL_1(O_E)} at level 1, q = 2
    auto ring = ResRing::get(2, 1);
    ResFn units = ResFn::char_invertible(ring, 1, opt.budget);
    LaurentX v = integrate_GLn(BasicFn::res_zero(f, 1, units), opt.budget);
    ck.expect(v == LaurentX(Coeff(Rat(1, 2))), "mu_E(O_E^x) at q=2 must be 1/2");
}

// ------------------------------------------------------------------ hecke

void suite_basic_closure(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    int cases = n_cases(opt, 100);
    int sample_points = 1000;
    auto f = FieldConfig::make(2, 8, 8);
    for (int c = 0; c < cases; ++c) {
        unsigned n = rng.coin() ? 1 : 2;
        unsigned m = 1;
        BasicFn b1 = rng.coin() ? random_cong_fn(f, rng, n, m, 2, opt.budget)
                                : random_res0_fn(f, rng, n, m, opt.budget);
        BasicFn b2 = rng.coin() ? random_cong_fn(f, rng, n, m, 2, opt.budget)
                                : random_res0_fn(f, rng, n, m, opt.budget);
        // make overlap likely half the time
        if (rng.coin()) b2 = b2.with_base(b1.base());

        auto prod = basic_product(b1, b2, opt.budget);
        int per_factor = sample_points / 2;
        for (int s = 0; s < per_factor; ++s) {
            MatF x = s % 2 == 0 ? random_support_point(b1, rng, opt.budget)
                                : random_support_point(b2, rng, opt.budget);
            LaurentX lhs = basic_eval(b1, x) * basic_eval(b2, x);
            LaurentX rhs = prod ? basic_eval(*prod, x) : LaurentX::zero();
            if (!ck.expect(lhs == rhs, "product value mismatch at a sampled point (case " +
                                           std::to_string(c) + ")"))
                return;
        }
    }
}

void suite_gl1_convolution(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    for (unsigned q : {2u, 3u}) {
        auto f = FieldConfig::make(q, 8, 8);
        auto ring = ResRing::get(q, 1);
        ResFn units = ResFn::char_invertible(ring, 1, opt.budget);
        HeckeElem e = HeckeElem::single(BasicFn::res_zero(f, 1, units));
        HeckeElem ee = convolve(e, e, opt.budget);
        LaurentX scale(Coeff(Rat(1) - Rat(1, q)));
        ck.expect(hecke_equal(ee, e.scaled(scale), opt.budget),
                  "e*e != (1-q^{-1}) e at q=" + std::to_string(q));
    }
    // graded law f_{c1} * f_{c2} = (1 - q^{-1}) f_{c1 c2}
    int cases = n_cases(opt, 20);
    auto f = FieldConfig::make(2, 8, 8);
    auto ring = ResRing::get(2, 1);
    ResFn units = ResFn::char_invertible(ring, 1, opt.budget);
    LaurentX scale(Coeff(Rat(1, 2)));
    for (int c = 0; c < cases; ++c) {
        int a1 = rng.uniform(-2, 2), b1 = rng.uniform(-2, 2);
        int a2 = rng.uniform(-2, 2), b2 = rng.uniform(-2, 2);
        auto fc = [&](int a, int b) {
            MatF base(f, 1);
            base.at(0, 0) = FElem::t2_pow(f, a) * FElem::t1_pow(f, b);
            return HeckeElem::single(BasicFn::res0(base, units));
        };
        HeckeElem lhs = convolve(fc(a1, b1), fc(a2, b2), opt.budget);
        HeckeElem rhs = fc(a1 + a2, b1 + b2).scaled(scale);
        ck.expect(hecke_equal(lhs, rhs, opt.budget),
                  "graded law failed at exponents (" + std::to_string(a1) + "," +
                      std::to_string(b1) + ")*(" + std::to_string(a2) + "," + std::to_string(b2) +
                      ")");
        // GL_1 commutativity
        HeckeElem sym = convolve(fc(a2, b2), fc(a1, b1), opt.budget);
        ck.expect(hecke_equal(lhs, sym, opt.budget), "GL_1 convolution not commutative");
    }
}

void suite_associativity(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    auto f = FieldConfig::make(2, 8, 8);
    int cases1 = n_cases(opt, 20);
    for (int c = 0; c < cases1; ++c) {
        unsigned m = rng.coin() ? 1 : 2;
        HeckeElem f1 = random_hecke(f, rng, 1, m, rng.uniform(1, 2), opt.budget);
        HeckeElem f2 = random_hecke(f, rng, 1, m, 1, opt.budget);
        HeckeElem f3 = random_hecke(f, rng, 1, m, 1, opt.budget);
        HeckeElem lhs = convolve(convolve(f1, f2, opt.budget), f3, opt.budget);
        HeckeElem rhs = convolve(f1, convolve(f2, f3, opt.budget), opt.budget);
        ck.expect(hecke_equal(lhs, rhs, opt.budget),
                  "associativity failed at n=1 (case " + std::to_string(c) + ")");
        // bilinearity over scalars
        LaurentX s = random_laurent(rng, -1, 1);
        ck.expect(hecke_equal(convolve(f1.scaled(s), f2, opt.budget),
                              convolve(f1, f2, opt.budget).scaled(s), opt.budget),
                  "left bilinearity failed");
    }
    int cases2 = std::max(1, n_cases(opt, 10) / 2);
    for (int c = 0; c < cases2; ++c) {
        HeckeElem f1 = random_hecke(f, rng, 2, 1, 1, opt.budget);
        HeckeElem f2 = random_hecke(f, rng, 2, 1, 1, opt.budget);
        HeckeElem f3 = random_hecke(f, rng, 2, 1, 1, opt.budget);
        HeckeElem lhs = convolve(convolve(f1, f2, opt.budget), f3, opt.budget);
        HeckeElem rhs = convolve(f1, convolve(f2, f3, opt.budget), opt.budget);
        ck.expect(hecke_equal(lhs, rhs, opt.budget),
                  "associativity failed at n=2 (case " + std::to_string(c) + ")");
    }
}

void suite_tau_independence(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    auto f = FieldConfig::make(2, 8, 8);
    int classes = n_cases(opt, 20);
    int reps = 10;
    for (int c = 0; c < classes; ++c) {
        unsigned n = rng.coin() ? 1 : 2;
        BasicFn b1 = random_cong_fn(f, rng, n, 1, 2, opt.budget);
        BasicFn b2 = random_cong_fn(f, rng, n, 1, 2, opt.budget);
        if (rng.coin()) b2 = b2.with_base(b1.base());
        int g1 = b1.gamma().at(0, 0), g2 = b2.gamma().at(0, 0);
        int theta = std::min(g1, g2);
        MatF d = b1.base() * b2.base();
        ResMat rho = random_resmat(rng, b1.profile().ring(), n, false);

        // representatives: D (I + t2^theta (lift(rho) + noise))
        bool first = true;
        LaurentX ref;
        for (int r = 0; r < reps; ++r) {
            MatF mrep = MatF::lift(f, rho);
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j) {
                    EElem fine = random_epoly(f, rng, 1, 2, false);
                    FElem deep = random_fpoly(f, rng, 1, 2, -2, 2, false);
                    mrep.at(i, j) = mrep.at(i, j) + FElem::from_e(fine) + deep;
                }
            MatF y = d * (MatF::identity(f, n) + mrep.shifted2(theta));
            auto prod = basic_product(translate_flip(b1, y), b2, opt.budget);
            LaurentX v = prod ? integrate_GLn(*prod, opt.budget) : LaurentX::zero();
            if (first) {
                ref = v;
                first = false;
                // the defining integral must agree with the convolution output
                HeckeElem conv =
                    convolve(HeckeElem::single(b1), HeckeElem::single(b2), opt.budget);
                if (!ck.expect(conv.eval(y) == v,
                               "convolution disagrees with its defining integral (class " +
                                   std::to_string(c) + ")"))
                    return;
            } else if (!ck.expect(v == ref, "value depends on the class representative (class " +
                                                std::to_string(c) + ")")) {
                return;
            }
        }
    }
}

void suite_algebra_action(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    auto f = FieldConfig::make(2, 8, 8);
    int cases = n_cases(opt, 20);
    for (int c = 0; c < cases; ++c) {
        unsigned m = rng.coin() ? 1 : 2;
        HeckeElem f1 = random_hecke(f, rng, 1, m, 1, opt.budget);
        HeckeElem f2 = random_hecke(f, rng, 1, m, 1, opt.budget);
        RepElement v = random_hecke(f, rng, 1, m, 1, opt.budget);
        RepElement lhs = hecke_action(convolve(f1, f2, opt.budget), v, opt.budget);
        RepElement rhs = hecke_action(f1, hecke_action(f2, v, opt.budget), opt.budget);
        ck.expect(hecke_equal(lhs, rhs, opt.budget),
                  "pi(f1*f2) v != pi(f1) pi(f2) v (case " + std::to_string(c) + ")");
        // zero acts as zero
        RepElement z = hecke_action(HeckeElem::zero(f, 1), v, opt.budget);
        ck.expect(z.terms().empty(), "pi(0) v != 0");
    }
    // translation action is a group action on random pairs
    for (int c = 0; c < 10; ++c) {
        RepElement v = random_hecke(f, rng, 2, 1, 1, opt.budget);
        MatF h1 = random_normalizing(f, rng, 2, 1, -1, 1);
        MatF h2 = random_normalizing(f, rng, 2, 1, -1, 1);
        RepElement a = translate_action(h1, translate_action(h2, v));
        RepElement b = translate_action(h1 * h2, v);
        ck.expect(hecke_equal(a, b, opt.budget), "(h1 h2) . v != h1 . (h2 . v)");
        ck.expect(integrate_GLn(translate_action(h1, v), opt.budget) ==
                      integrate_GLn(v, opt.budget),
                  "translation changed the GL_n integral");
    }
    // right translation also preserves the integral: phi(tau sigma)
    auto ring = ResRing::get(2, 1);
    for (int c = 0; c < 10; ++c) {
        BasicFn t = random_res0_fn(f, rng, 2, 1, opt.budget);
        MatF sigma = random_normalizing(f, rng, 2, 1, -1, 1);
        FElem ds = mat_det(sigma);
        MatF sigma_unit = sigma.shifted2(-ds.v2() / 2);
        ResMat um = sigma_unit.residue(ring);
        ResMat uminv = um.inverse();
        ResFn g2(ring, 2);
        for (const auto& [code, val] : t.profile().values())
            g2.set(um * ResMat::decode(ring, 2, code) * uminv, val);
        BasicFn rt = BasicFn::res0(t.base() * mat_inv(sigma), g2);
        ck.expect(integrate_GLn(rt, opt.budget) == integrate_GLn(t, opt.budget),
                  "right translation changed the GL_n integral");
        // pointwise: rt(x) = t(x sigma) on sampled support points
        for (int s = 0; s < 10; ++s) {
            MatF x = random_support_point(rt, rng, opt.budget);
            ck.expect(basic_eval(rt, x) == basic_eval(t, x * sigma),
                      "right translate disagrees pointwise");
        }
    }
}

void suite_stabilizer(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    auto f = FieldConfig::make(2, 8, 8);
    for (unsigned n : {1u, 2u}) {
        auto ring = ResRing::get(2, 1);
        // A != I: trivial stabilizer
        MatF a = random_normalizing(f, rng, n, 1, 1, 2);
        BasicFn t = BasicFn::cong(a, IntMat::constant(n, 1),
                                  random_char_profile(rng, ring, n, 2, false, opt.budget));
        SubgroupDescriptor d = stabilizer(HeckeElem::single(t), opt.budget);
        ck.expect(d.kind == SubgroupDescriptor::Kind::Trivial,
                  "stabilizer must be trivial for A != I");

        // A = I, g = char of the kernel class: H is the additive zero class
        ResFn kernel_char = ResFn::char_point(ResMat(ring, n));
        SubgroupDescriptor dk = stabilizer(
            HeckeElem::single(BasicFn::cong(MatF::identity(f, n), IntMat::constant(n, 1),
                                            kernel_char)),
            opt.budget);
        ck.expect(dk.kind == SubgroupDescriptor::Kind::Congruence && dk.h == std::set<rcode_t>{0},
                  "kernel-class stabilizer must be the zero residue class");
        ck.expect(dk.is_group_at_level(), "stabilizer is not a group at level m");
        ck.expect(integrate_GLn(dk.char_fn(f), opt.budget) ==
                      Monomial{static_cast<int>(n * n), static_cast<int>(n * n)}.to_laurent(2),
                  "kernel stabilizer char has wrong integral");

        // A = I, g = char_{GL_n(O_E)} at level 1 (residue form): full group
        ResFn units = ResFn::char_invertible(ring, n, opt.budget);
        SubgroupDescriptor dg =
            stabilizer(HeckeElem::single(BasicFn::res_zero(f, n, units)), opt.budget);
        ck.expect(dg.kind == SubgroupDescriptor::Kind::Residue &&
                      Int(dg.h.size()) == gl_order(2, 1, n),
                  "full-group stabilizer must be all of GL_n(F_2)");
        ck.expect(dg.is_group_at_level(), "residue stabilizer is not a group");

        // generic: exhaustive search result leaves v invariant on samples
        BasicFn gfn = BasicFn::cong(MatF::identity(f, n), IntMat::constant(n, 1),
                                    random_char_profile(rng, ring, n, 2, false, opt.budget));
        RepElement v = HeckeElem::single(gfn);
        SubgroupDescriptor ds = stabilizer(v, opt.budget);
        ck.expect(ds.is_group_at_level(), "searched stabilizer is not a group");
        for (rcode_t code : ds.h) {
            MatF h = MatF::identity(f, n) +
                     MatF::lift(f, ResMat::decode(ring, n, code)).shifted2(1);
            ck.expect(hecke_equal(translate_action(h, v), v, opt.budget),
                      "claimed stabilizer element moves the vector");
        }
    }
}

void suite_oracle_equivalence(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    int cases = n_cases(opt, 100);
    OracleOptions oopt;
    oopt.seed = opt.seed + 17;
    for (int c = 0; c < cases; ++c) {
        unsigned q = rng.coin() ? 2 : 3;
        auto f = FieldConfig::make(q, 8, 8);
        if (rng.coin()) {
            // measures: base with aligned-stratum structure
            DistinguishedSet base = random_dist_set(f, rng, 2, 1);
            SetExpr expr = SetExpr::make_leaf(DistBox{{base}});
            if (rng.coin()) {
                DistinguishedSet hole(base.a + FElem::monomial(base.gamma,
                                                               EElem::t1_pow(f, base.delta)),
                                      base.gamma, base.delta + 1);
                expr = SetExpr::make_diff(expr, {SetExpr::make_leaf(DistBox{{hole}})});
            }
            LaurentX engine = dist_measure(ring_normalize(expr, q), q);
            LaurentX oracle = oracle_measure(expr, q, f, oopt);
            ck.expect(engine == oracle, "measure disagrees with the counting oracle (case " +
                                            std::to_string(c) + ")");
        } else {
            unsigned n = rng.coin() ? 1 : 2;
            SimpleFn fn = random_box_simplefn(f, rng, n, 1);
            // align strata across terms by construction (single term)
            LaurentX engine = integrate_Fn(fn);
            LaurentX oracle = oracle_integral(fn, oopt);
            ck.expect(engine == oracle, "integral disagrees with the counting oracle (case " +
                                            std::to_string(c) + ")");
        }
    }
}

void suite_double_coset(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    auto f = FieldConfig::make(2, 8, 8);
    int sample_points = 1000;
    for (unsigned n : {1u, 2u}) {
        auto ring = ResRing::get(2, 1);
        // v: char of a congruence support based at I
        ResFn g = random_char_profile(rng, ring, n, 3, false, opt.budget);
        BasicFn term = BasicFn::cong(MatF::identity(f, n), IntMat::constant(n, 1), g);
        RepElement v = HeckeElem::single(term);
        SubgroupDescriptor m = bi_invariance_group(v, opt.budget);
        ck.expect(m.is_group_at_level(), "bi-invariance output is not a group");

        auto dec = double_coset_decompose(v, m, 8, opt.budget);
        int samples = sample_points / 2;
        for (int s = 0; s < samples; ++s) {
            MatF x = random_support_point(term, rng, opt.budget);
            LaurentX direct = v.eval(x);
            LaurentX recon;
            for (const auto& t : dec.terms)
                if (in_double_coset(m, t.rep, x, opt.budget)) recon += t.coeff;
            if (!ck.expect(direct == recon,
                           "double-coset reconstruction mismatch at a sampled point"))
                return;
        }
        // v = char_M reconstructs as [(I, 1)]
        RepElement vm = HeckeElem::single(m.char_fn(f));
        if (!vm.terms().empty()) {
            auto dm = double_coset_decompose(vm, m, 8, opt.budget);
            ck.expect(dm.terms.size() == 1 && dm.terms[0].coeff == LaurentX::one(),
                      "char_M must decompose as a single identity coset");
        }
    }
}

void suite_set_lemmas(const VerifyOptions& opt, Check& ck) {
    Rng rng(opt.seed);
    auto f = FieldConfig::make(2, 8, 8);
    int cases = n_cases(opt, 100);
    for (int c = 0; c < cases; ++c) {
        Ball b1(random_fpoly(f, rng, -2, 2, -2, 2, false), rng.uniform(-2, 2));
        Ball b2(random_fpoly(f, rng, -2, 2, -2, 2, false), rng.uniform(-2, 2));
        Ball b3(random_fpoly(f, rng, -2, 2, -2, 2, false), rng.uniform(-2, 2));
        auto i12 = ball_intersect(b1, b2);
        auto i21 = ball_intersect(b2, b1);
        ck.expect(i12.has_value() == i21.has_value() && (!i12 || (*i12 == *i21)),
                  "ball intersection not commutative");
        ck.expect(ball_intersect(b1, b1).has_value() && *ball_intersect(b1, b1) == b1,
                  "ball intersection not idempotent");
        // associativity as a partial operation
        auto left = i12 ? ball_intersect(*i12, b3) : std::nullopt;
        auto i23 = ball_intersect(b2, b3);
        auto right = i23 ? ball_intersect(b1, *i23) : std::nullopt;
        if (i12 && i23)
            ck.expect(left.has_value() == right.has_value() && (!left || (*left == *right)),
                      "ball intersection not associative");
        // membership characterization of the intersection
        FElem x = random_in_ball(f, rng, std::max(b1.gamma, b2.gamma)) + b1.a;
        bool both = b1.contains(x) && b2.contains(x);
        ck.expect(both == (i12 && i12->contains(x)), "intersection membership mismatch");

        // affine image and Minkowski sum
        FElem g = random_fpoly(f, rng, -2, 2, -2, 2, true);
        FElem t = random_fpoly(f, rng, -2, 2, -2, 2, false);
        Ball img = ball_affine_image(g, t, b1);
        FElem p = b1.a + random_in_ball(f, rng, b1.gamma);
        ck.expect(img.contains(g * p + t), "affine image misses a transported point");
        Ball sum = ball_minkowski_sum(b1, b2);
        FElem p2 = b2.a + random_in_ball(f, rng, b2.gamma);
        ck.expect(sum.contains(p + p2), "Minkowski sum misses a pointwise sum");
    }
    // normalized indicator agreement on sampled points
    for (int c = 0; c < cases / 4; ++c) {
        DistinguishedSet base = random_dist_set(f, rng, 1, 1);
        DistinguishedSet hole(base.a, base.gamma, base.delta + 1);
        DistinguishedSet other = random_dist_set(f, rng, 1, 1);
        SetExpr expr = SetExpr::make_union(
            {SetExpr::make_diff(SetExpr::make_leaf(DistBox{{base}}),
                                {SetExpr::make_leaf(DistBox{{hole}})}),
             SetExpr::make_leaf(DistBox{{other}})});
        SetRingElem s = ring_normalize(expr, 2);
        for (int p = 0; p < 20; ++p) {
            FElem x = (p % 2 ? base.a : other.a) +
                      random_in_dist(f, rng, p % 2 ? base.gamma : other.gamma, -2);
            ck.expect(expr.contains({x}) == s.contains({x}),
                      "normalized element has a different indicator");
        }
        // components pairwise disjoint on samples
        for (int p = 0; p < 10; ++p) {
            FElem x = base.a + random_in_dist(f, rng, base.gamma, base.delta);
            int hits = 0;
            for (const auto& comp : s.components())
                if (comp.contains({x})) ++hits;
            ck.expect(hits <= 1, "normalized components overlap");
        }
    }
    // congruence coset intersections against pointwise membership
    for (int c = 0; c < cases / 4; ++c) {
        unsigned n = rng.coin() ? 1 : 2;
        auto ring = ResRing::get(2, 1);
        MatF a = random_normalizing(f, rng, n, 1, -1, 1);
        int g1 = rng.uniform(1, 2), g2 = rng.uniform(1, 2);
        ResSupport v1 = ResSupport::of(ring, n, {random_resmat(rng, ring, n, false).encode()});
        ResSupport v2 = rng.coin()
                            ? ResSupport::full_marker(ring, n)
                            : ResSupport::of(ring, n,
                                             {random_resmat(rng, ring, n, false).encode()});
        GLCongCoset c1(a, IntMat::constant(n, g1), v1);
        MatF b = rng.coin() ? a
                            : a * (MatF::identity(f, n) +
                                   MatF::lift(f, random_resmat(rng, ring, n, false)).shifted2(g2));
        GLCongCoset c2(b, IntMat::constant(n, g2), v2);
        auto inter = glcoset_intersect(c1, c2, opt.budget);
        BasicFn probe1 = BasicFn::cong(c1.A, c1.Gamma,
                                       ResFn::constant_full(ring, n, LaurentX::one()));
        for (int s = 0; s < 30; ++s) {
            MatF x = random_support_point(probe1, rng, opt.budget);
            bool in1 = c1.contains(x), in2 = c2.contains(x);
            bool ini = inter && inter->contains(x);
            ck.expect((in1 && in2) == ini, "coset intersection membership mismatch");
        }
    }
}

using SuiteFn = void (*)(const VerifyOptions&, Check&);

const std::map<std::string, SuiteFn>& suite_table() {
    static const std::map<std::string, SuiteFn> table = {
        {"laurent-ring", suite_laurent_ring},
        {"field-abs", suite_field_abs},
        {"matrix", suite_matrix},
        {"measure-formula", suite_measure_formula},
        {"additivity", suite_additivity},
        {"invariance", suite_invariance},
        {"fubini", suite_fubini},
        {"change-of-variables", suite_change_of_variables},
        {"gl-bridge", suite_gl_bridge},
        {"basic-closure", suite_basic_closure},
        {"gl1-convolution", suite_gl1_convolution},
        {"associativity", suite_associativity},
        {"tau-independence", suite_tau_independence},
        {"algebra-action", suite_algebra_action},
        {"stabilizer", suite_stabilizer},
        {"oracle-equivalence", suite_oracle_equivalence},
        {"double-coset", suite_double_coset},
        {"set-lemmas", suite_set_lemmas},
    };
    return table;
}

} // namespace

std::vector<std::string> verify_suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : suite_table()) names.push_back(name);
    return names;
}

PropertyResult run_verify(const std::string& suite, const VerifyOptions& opt) {
    auto it = suite_table().find(suite);
    if (it == suite_table().end()) throw UnknownSuite("unknown verify suite: " + suite);
    Check ck;
    it->second(opt, ck);
    PropertyResult r;
    r.suite = suite;
    r.pass = ck.pass;
    r.cases_run = ck.cases;
    r.detail = ck.detail.str();
    return r;
}

} // namespace hlf
