#include <doctest.h>

#include "hlf/field.hpp"
#include "hlf/oracle.hpp"
#include "hlf/randomgen.hpp"

using namespace hlf;

namespace {
FieldRef F2() { return FieldConfig::make(2, 10, 10); }
FieldRef F5() { return FieldConfig::make(5, 10, 10); }
} // namespace

TEST_CASE("GF tables") {
    auto gf4 = GFTable::get(4);
    CHECK(gf4->p() == 2);
    CHECK(gf4->degree() == 2);
    // every nonzero element has a multiplicative inverse
    for (gf_t a = 1; a < 4; ++a) CHECK(gf4->mul(a, gf4->inv(a)) == 1);
    auto gf9 = GFTable::get(9);
    for (gf_t a = 1; a < 9; ++a) CHECK(gf9->mul(a, gf9->inv(a)) == 1);
    // addition has characteristic p
    for (gf_t a = 0; a < 9; ++a) {
        gf_t s = 0;
        for (int i = 0; i < 3; ++i) s = gf9->add(s, a);
        CHECK(s == 0);
    }
    CHECK_THROWS_AS(GFTable::get(6), Error);
}

TEST_CASE("fe_mul") {
    auto f = F2();
    FElem t2 = FElem::t2_pow(f, 1);
    FElem t1 = FElem::t1_pow(f, 1);
    FElem p = fe_mul(t2, t1);
    auto dec = fe_unit_decompose(p);
    CHECK(dec.v2 == 1);
    CHECK(dec.v1 == 1);
    CHECK(dec.unit.eq_exact(FElem::one(f)));

    FElem one = FElem::one(f);
    CHECK(fe_mul(one + t2, one - t2).eq_exact(one - t2 * t2));

    // (t1 + t2) * t1^{-1} = 1 + t1^{-1} t2 at q = 2
    FElem lhs = fe_mul(t1 + t2, FElem::t1_pow(f, -1));
    FElem rhs = one + FElem::monomial(1, EElem::t1_pow(f, -1));
    CHECK(lhs.eq_exact(rhs));
}

TEST_CASE("fe_inv") {
    auto f = F2();
    FElem t2 = FElem::t2_pow(f, 1);
    CHECK(fe_inv(t2).eq_exact(FElem::t2_pow(f, -1)));

    FElem one = FElem::one(f);
    FElem g = fe_inv(one + t2);
    // geometric series within the window
    FElem expect = FElem::zero(f);
    for (int k = 0; k < f->t2_prec; ++k) expect = expect + FElem::t2_pow(f, k);
    CHECK(g.agrees(expect));
    CHECK((g * (one + t2)).agrees(one));

    FElem a = FElem::t1_pow(f, 1) * (one + t2);
    CHECK((fe_inv(a) * a).agrees(one));
    CHECK_THROWS_AS(fe_inv(FElem::zero(f)), DivisionByZero);
}

TEST_CASE("fe_unit_decompose") {
    auto f = F2();
    FElem a = FElem::t2_pow(f, 2) * FElem::t1_pow(f, 3);
    auto dec = fe_unit_decompose(a);
    CHECK(dec.v2 == 2);
    CHECK(dec.v1 == 3);
    CHECK(dec.unit.eq_exact(FElem::one(f)));

    FElem b = FElem::one(f) + FElem::t2_pow(f, 1);
    auto db = fe_unit_decompose(b);
    CHECK(db.v2 == 0);
    CHECK(db.v1 == 0);
    CHECK(db.unit.eq_exact(b));

    FElem c = FElem::t1_pow(f, 2) + FElem::t1_pow(f, 3);
    auto dc = fe_unit_decompose(c);
    CHECK(dc.v2 == 0);
    CHECK(dc.v1 == 2);
    CHECK(dc.unit.eq_exact(FElem::from_e(
        EElem::from_coeffs(f, 0, {1, 1}))));
    CHECK((FElem::t2_pow(f, dc.v2) * FElem::t1_pow(f, dc.v1) * dc.unit).eq_exact(c));
}

TEST_CASE("fe_abs") {
    auto f = F2();
    CHECK(fe_abs(FElem::t2_pow(f, 1) * FElem::t1_pow(f, 2)) == Monomial{1, 2});
    CHECK(fe_abs(FElem::one(f)) == Monomial{0, 0});
    FElem u = FElem::t1_pow(f, -1) * (FElem::one(f) + FElem::t2_pow(f, 1));
    CHECK(fe_abs(u) == Monomial{0, -1});
    CHECK(fe_abs(u).to_laurent(2) == LaurentX(2));
    // |t1^{-1}| = q matches the measure of t1^{-1} O by the counting oracle
    SetExpr s = SetExpr::make_leaf(DistBox{{DistinguishedSet(FElem::zero(f), 0, -1)}});
    CHECK(oracle_measure(s, 2, f) == LaurentX(2));
}

TEST_CASE("fe_residue") {
    auto f5 = F5();
    FElem x = FElem::from_e(EElem::from_gf(f5, 3)) +
              FElem::monomial(1, EElem::from_coeffs(f5, 0, {1, 2}));
    CHECK(fe_residue(x) == EElem::from_gf(f5, 3));
    auto f = F2();
    CHECK(fe_residue(FElem::t2_pow(f, 1)).provably_zero());
    FElem y = FElem::t1_pow(f, 1) + FElem::monomial(1, EElem::t1_pow(f, 2));
    CHECK(fe_residue(y) == EElem::t1_pow(f, 1));
    CHECK_THROWS_AS(fe_residue(FElem::t2_pow(f, -1)), NotIntegral);
}

TEST_CASE("abs is multiplicative on random pairs") {
    auto f = FieldConfig::make(4, 10, 10);
    Rng rng(11);
    for (int c = 0; c < 500; ++c) {
        FElem a = random_fpoly(f, rng, -2, 2, -2, 2, true);
        FElem b = random_fpoly(f, rng, -2, 2, -2, 2, true);
        CHECK(fe_abs(a * b) == fe_abs(a) * fe_abs(b));
    }
}

TEST_CASE("element parse/print roundtrip") {
    auto f = F2();
    FElem a = fe_parse(f, "t2^-1*(1+t1) + t2^0*(t1^2)");
    CHECK(a.v2() == -1);
    CHECK(fe_parse(f, a.str()).eq_exact(a));

    Rng rng(23);
    for (int c = 0; c < 100; ++c) {
        FElem x = random_fpoly(f, rng, -3, 3, -3, 3, false);
        if (x.provably_zero()) continue;
        CHECK(fe_parse(f, x.str()).eq_exact(x));
    }
    CHECK_THROWS_AS(fe_parse(f, "t2^^1"), ParseError);
}

TEST_CASE("precision discipline") {
    auto f = FieldConfig::make(2, 6, 6);
    FElem one = FElem::one(f);
    FElem g = fe_inv(one + FElem::t2_pow(f, 1)); // inexact, window 6
    CHECK_FALSE(g.exact2());
    CHECK(g.known2_until() == 6);
    // subtraction to an all-zero window leaves only a bound
    FElem d = g - g;
    CHECK_FALSE(d.provably_nonzero());
    CHECK_FALSE(d.provably_zero());
    CHECK_THROWS_AS(d.v2(), PrecisionExhausted);
    // an element whose valuation bound sits below zero with nothing
    // known cannot be given a residue
    CHECK_THROWS_AS(fe_residue(d.shifted2(-7)), PrecisionExhausted);
    // but shifting a window bound above zero makes the residue zero
    CHECK(fe_residue(d).provably_zero());
}
