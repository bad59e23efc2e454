#include <doctest.h>

#include "hlf/hecke.hpp"
#include "hlf/randomgen.hpp"

using namespace hlf;

namespace {

FieldRef F2() { return FieldConfig::make(2, 10, 10); }

HeckeElem unit_char(const FieldRef& f, rcode_t budget = MatEnumerator::kDefaultBudget) {
    auto ring = ResRing::get(f->q, 1);
    return HeckeElem::single(BasicFn::res_zero(f, 1, ResFn::char_invertible(ring, 1, budget)));
}

} // namespace

TEST_CASE("basic_eval") {
    auto f = F2();
    auto ring = ResRing::get(2, 1);
    BasicFn g00 = BasicFn::res_zero(f, 2, ResFn::char_invertible(ring, 2, 1u << 20));
    CHECK(basic_eval(g00, MatF::identity(f, 2)) == LaurentX::one());
    CHECK(basic_eval(g00, MatF::identity(f, 2).shifted2(1)) == LaurentX::zero());

    // n=1: f = g^{1,(1)} with g = char of the t1-class, evaluated at 1 + t2 t1
    auto ring2 = ResRing::get(2, 2);
    ResFn g(ring2, 1);
    ResMat t1class(ring2, 1);
    t1class.at(0, 0) = 2; // code of t1 in O_E/t1^2
    g.set(t1class, LaurentX::one());
    BasicFn fn = BasicFn::cong(MatF::identity(f, 1), IntMat::constant(1, 1), g);
    MatF x(f, 1);
    x.at(0, 0) = FElem::one(f) + (FElem::t2_pow(f, 1) * FElem::t1_pow(f, 1));
    CHECK(basic_eval(fn, x) == LaurentX::one());
    MatF y(f, 1);
    y.at(0, 0) = FElem::one(f) + FElem::t2_pow(f, 1);
    CHECK(basic_eval(fn, y) == LaurentX::zero());
}

TEST_CASE("basic_product") {
    auto f = F2();
    Rng rng(51);
    // f * f = f for char-type
    BasicFn b = random_cong_fn(f, rng, 1, 1, 2, 1u << 20);
    // strip to a char profile
    ResFn charp(b.profile().ring(), 1);
    for (const auto& [k, v] : b.profile().values())
        charp.set(ResMat::decode(b.profile().ring(), 1, k), LaurentX::one());
    BasicFn cb = BasicFn::cong(b.base(), b.gamma(), charp);
    auto p = basic_product(cb, cb);
    REQUIRE(p.has_value());
    Rng srng(99);
    for (int s = 0; s < 100; ++s) {
        MatF x = random_support_point(cb, srng, 1u << 20);
        CHECK(basic_eval(*p, x) == basic_eval(cb, x));
    }

    // disjoint supports give zero
    BasicFn far = cb.with_base(cb.base().shifted2(3));
    CHECK_FALSE(basic_product(cb, far).has_value());

    // overlapping congruence cosets at level 1, validated by sampling
    for (int c = 0; c < 10; ++c) {
        BasicFn b1 = random_cong_fn(f, rng, 1, 1, 2, 1u << 20);
        BasicFn b2 = random_cong_fn(f, rng, 1, 1, 2, 1u << 20);
        if (rng.coin()) b2 = b2.with_base(b1.base());
        auto prod = basic_product(b1, b2);
        for (int s = 0; s < 500; ++s) {
            MatF x = s % 2 ? random_support_point(b1, srng, 1u << 20)
                           : random_support_point(b2, srng, 1u << 20);
            LaurentX expect = basic_eval(b1, x) * basic_eval(b2, x);
            CHECK((prod ? basic_eval(*prod, x) : LaurentX::zero()) == expect);
        }
    }
}

TEST_CASE("translate_flip") {
    auto f = F2();
    auto ring = ResRing::get(2, 1);

    // full-marker support is negation stable
    BasicFn full = BasicFn::cong(MatF::identity(f, 1), IntMat::constant(1, 1),
                                 ResFn::constant_full(ring, 1, LaurentX::one()));
    BasicFn flipped = translate_flip(full, full.base());
    CHECK(flipped.profile().full());

    // q=3, V={1}: the flip negates the residue class
    auto f3 = FieldConfig::make(3, 10, 10);
    auto ring3 = ResRing::get(3, 1);
    ResFn g(ring3, 1);
    ResMat one_class(ring3, 1);
    one_class.at(0, 0) = 1;
    g.set(one_class, LaurentX::one());
    BasicFn fn = BasicFn::cong(MatF::identity(f3, 1), IntMat::constant(1, 1), g);
    MatF y = MatF::identity(f3, 1);
    BasicFn h = translate_flip(fn, y);
    ResMat neg_class(ring3, 1);
    neg_class.at(0, 0) = 2;
    CHECK(h.profile().value_at(neg_class) == LaurentX::one());
    CHECK(h.profile().value_at(one_class) == LaurentX::zero());

    // pointwise identity f(y x^{-1}) = h(x) on sampled points
    Rng rng(61);
    for (int c = 0; c < 20; ++c) {
        BasicFn b = random_cong_fn(f, rng, 2, 1, 2, 1u << 20);
        MatF yy = random_normalizing(f, rng, 2, 1, -1, 1) * b.base();
        BasicFn hb = translate_flip(b, yy);
        for (int s = 0; s < 50; ++s) {
            MatF x = random_support_point(hb, rng, 1u << 20);
            CHECK(basic_eval(b, yy * mat_inv(x)) == basic_eval(hb, x));
        }
        // and on points sampled from the source support
        for (int s = 0; s < 50; ++s) {
            MatF w = random_support_point(b, rng, 1u << 20);
            MatF x = mat_inv(w) * yy; // then y x^{-1} = ... w-ish
            CHECK(basic_eval(b, yy * mat_inv(x)) == basic_eval(hb, x));
        }
    }
}

TEST_CASE("integrate_GLn on basic forms") {
    auto f = F2();
    auto ring = ResRing::get(2, 1);
    // a unit-integral char on the congruence coset integrates to X^{sum Gamma}
    for (unsigned n : {1u, 2u})
        for (int gamma : {1, 2}) {
            BasicFn fn = BasicFn::cong(MatF::identity(f, n), IntMat::constant(n, gamma),
                                       ResFn::constant_full(ring, n, LaurentX::one()));
            LaurentX v = integrate_GLn(fn);
            // the E-level integral of the full char is q^{-m n^2} * q^{m n^2} = 1
            CHECK(v == LaurentX::monomial(gamma * static_cast<int>(n * n), Coeff(1)));
        }
    // base-independence of the integral (left invariance)
    Rng rng(111);
    BasicFn moved = BasicFn::cong(random_normalizing(f, rng, 2, 1, -1, 1),
                                  IntMat::constant(2, 1),
                                  ResFn::constant_full(ring, 2, LaurentX::one()));
    CHECK(integrate_GLn(moved) == LaurentX::monomial(4, Coeff(1)));
}

TEST_CASE("convolution: e * e") {
    for (unsigned q : {2u, 3u}) {
        auto f = FieldConfig::make(q, 10, 10);
        HeckeElem e = unit_char(f);
        HeckeElem ee = convolve(e, e);
        LaurentX scale(Coeff(Rat(1) - Rat(1, q)));
        CHECK(hecke_equal(ee, e.scaled(scale)));
        // and pointwise at the identity
        CHECK(ee.eval(MatF::identity(f, 1)) == scale);
    }
}

TEST_CASE("convolution: graded GL_1 law") {
    auto f = F2();
    auto ring = ResRing::get(2, 1);
    ResFn units = ResFn::char_invertible(ring, 1, 1u << 20);
    auto fc = [&](int a, int b) {
        MatF base(f, 1);
        base.at(0, 0) = FElem::t2_pow(f, a) * FElem::t1_pow(f, b);
        return HeckeElem::single(BasicFn::res0(base, units));
    };
    Rng rng(71);
    for (int c = 0; c < 20; ++c) {
        int a1 = rng.uniform(-2, 2), b1 = rng.uniform(-2, 2);
        int a2 = rng.uniform(-2, 2), b2 = rng.uniform(-2, 2);
        HeckeElem lhs = convolve(fc(a1, b1), fc(a2, b2));
        CHECK(hecke_equal(lhs, fc(a1 + a2, b1 + b2).scaled(LaurentX(Coeff(Rat(1, 2))))));
    }

    // zero-measure right factor annihilates
    HeckeElem zero = HeckeElem::zero(f, 1);
    CHECK(convolve(fc(0, 0), zero).terms().empty());
}

TEST_CASE("convolution distributes over disjoint supports") {
    auto f = F2();
    Rng rng(81);
    HeckeElem f1 = random_hecke(f, rng, 1, 1, 2, 1u << 20);
    HeckeElem f2 = random_hecke(f, rng, 1, 1, 1, 1u << 20);
    HeckeElem f3 = random_hecke(f, rng, 1, 1, 1, 1u << 20);
    CHECK(hecke_equal(convolve(f1, f2.plus(f3)), convolve(f1, f2).plus(convolve(f1, f3))));
}

TEST_CASE("structure constants") {
    auto f = F2();
    // single near-idempotent e
    HeckeElem e = unit_char(f);
    StructureTable t1 = hecke_structure_constants({e});
    CHECK(t1.size == 1);
    CHECK(t1.constants[0][0][0] == LaurentX(Coeff(Rat(1, 2))));
    CHECK(t1.remainders[0][0].terms().empty());

    // graded basis {f_c}
    auto ring = ResRing::get(2, 1);
    ResFn units = ResFn::char_invertible(ring, 1, 1u << 20);
    std::vector<HeckeElem> basis;
    for (int a : {0, 1})
        for (int b : {0, 1}) {
            MatF base(f, 1);
            base.at(0, 0) = FElem::t2_pow(f, a) * FElem::t1_pow(f, b);
            basis.push_back(HeckeElem::single(BasicFn::res0(base, units)));
        }
    StructureTable t2 = hecke_structure_constants(basis);
    // basis order: f_1, f_{t1}, f_{t2}, f_{t2 t1}
    CHECK(t2.constants[0][0][0] == LaurentX(Coeff(Rat(1, 2))));
    CHECK(t2.constants[0][3][3] == LaurentX(Coeff(Rat(1, 2))));
    CHECK(t2.constants[0][3][0] == LaurentX::zero());
    // f_{t1} * f_{t2} = (1/2) f_{t2 t1}: diagonal grading inside the basis
    CHECK(t2.constants[1][2][3] == LaurentX(Coeff(Rat(1, 2))));
    CHECK(t2.remainders[1][2].terms().empty());
    // f_{t2 t1} * f_{t2 t1} leaves the basis entirely
    CHECK(t2.constants[3][3][3] == LaurentX::zero());
    CHECK_FALSE(t2.remainders[3][3].terms().empty());

    StructureTable empty_table = hecke_structure_constants({});
    CHECK(empty_table.size == 0);
}

TEST_CASE("prime-power residue fields and higher levels") {
    // e * e at q = 4 (GF(2^2) tables through the convolution path)
    auto f4 = FieldConfig::make(4, 8, 8);
    HeckeElem e4 = unit_char(f4);
    CHECK(hecke_equal(convolve(e4, e4), e4.scaled(LaurentX(Coeff(Rat(3, 4))))));

    // graded law at level m = 2, q = 2
    auto f = F2();
    auto ring2 = ResRing::get(2, 2);
    ResFn units2(ring2, 1);
    for (rcode_t c = 0; c < 4; ++c)
        if (ring2->is_unit(c)) {
            ResMat mm(ring2, 1);
            mm.at(0, 0) = c;
            units2.set(mm, LaurentX::one());
        }
    auto fc2 = [&](int a, int b) {
        MatF base(f, 1);
        base.at(0, 0) = FElem::t2_pow(f, a) * FElem::t1_pow(f, b);
        return HeckeElem::single(BasicFn::res0(base, units2));
    };
    CHECK(hecke_equal(convolve(fc2(1, 0), fc2(0, 1)),
                      fc2(1, 1).scaled(LaurentX(Coeff(Rat(1, 2))))));

    // one n = 2, m = 2 convolution round trip
    Rng rng(121);
    HeckeElem a = random_hecke(f, rng, 2, 2, 1, 1u << 22);
    HeckeElem b = random_hecke(f, rng, 2, 2, 1, 1u << 22);
    HeckeElem c = random_hecke(f, rng, 2, 2, 1, 1u << 22);
    CHECK(hecke_equal(convolve(convolve(a, b, 1u << 22), c, 1u << 22),
                      convolve(a, convolve(b, c, 1u << 22), 1u << 22), 1u << 22));
}

TEST_CASE("structure table reconstructs the products") {
    auto f = F2();
    auto ring = ResRing::get(2, 1);
    ResFn units = ResFn::char_invertible(ring, 1, 1u << 20);
    std::vector<HeckeElem> basis;
    for (int a : {0, 1})
        for (int b : {0, 1}) {
            MatF base(f, 1);
            base.at(0, 0) = FElem::t2_pow(f, a) * FElem::t1_pow(f, b);
            basis.push_back(HeckeElem::single(BasicFn::res0(base, units)));
        }
    StructureTable t = hecke_structure_constants(basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            HeckeElem expect = t.remainders[i][j];
            for (std::size_t k = 0; k < basis.size(); ++k)
                expect = expect.plus(basis[k].scaled(t.constants[i][j][k]));
            CHECK(hecke_equal(convolve(basis[i], basis[j]), expect));
        }
}

TEST_CASE("normalization merges mergeable terms") {
    auto f = F2();
    auto ring = ResRing::get(2, 1);
    ResFn units = ResFn::char_invertible(ring, 1, 1u << 20);
    HeckeElem e = HeckeElem::single(BasicFn::res_zero(f, 1, units));
    HeckeElem sum = e.plus(e.scaled(LaurentX(-1)));
    CHECK(sum.terms().size() == 2);
    CHECK(sum.normalized().terms().empty());
    CHECK(hecke_equal(e.plus(e), e.scaled(LaurentX(2))));
}
