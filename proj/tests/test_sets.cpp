#include <doctest.h>

#include "hlf/oracle.hpp"
#include "hlf/randomgen.hpp"
#include "hlf/sets.hpp"

using namespace hlf;

namespace {
FieldRef F2() { return FieldConfig::make(2, 10, 10); }
} // namespace

TEST_CASE("ball_intersect follows the case analysis") {
    auto f = F2();
    FElem a = fe_parse(f, "t2^-1*(1)");
    Ball b1(a, 1), b2(a, 2);
    auto i = ball_intersect(b1, b2);
    REQUIRE(i.has_value());
    CHECK(*i == b2);

    Ball z(FElem::zero(f), 1), o(FElem::one(f), 1);
    CHECK_FALSE(ball_intersect(z, o).has_value());
    CHECK(*ball_intersect(z, z) == z);
}

TEST_CASE("ball_affine_image") {
    auto f = F2();
    Ball unitball(FElem::zero(f), 0);
    Ball img = ball_affine_image(FElem::t2_pow(f, 1), FElem::zero(f), unitball);
    CHECK(img == Ball(FElem::zero(f), 1));

    // t1 is a unit of the rank-one ring: t1 * (t2 O1) = t2 O1
    Ball t2ball(FElem::zero(f), 1);
    CHECK(ball_affine_image(FElem::t1_pow(f, 1), FElem::zero(f), t2ball) == t2ball);

    FElem a = fe_parse(f, "t2^0*(t1)");
    Ball moved = ball_affine_image(FElem::one(f), a, t2ball);
    CHECK(moved.gamma == 1);
    CHECK(moved.a.eq_exact(a));
    CHECK_THROWS_AS(ball_affine_image(FElem::zero(f), a, t2ball), DivisionByZero);
}

TEST_CASE("ball_minkowski_sum") {
    auto f = F2();
    FElem a = fe_parse(f, "t2^-2*(1)"), b = fe_parse(f, "t2^-1*(t1)");
    CHECK(ball_minkowski_sum(Ball(a, 1), Ball(b, 1)) == Ball(a + b, 1));
    CHECK(ball_minkowski_sum(Ball(a, 2), Ball(b, 1)) == Ball(a + b, 1));
    Ball x(a, 1), zero(FElem::zero(f), 5);
    // adding a very deep ball keeps the center class
    CHECK(ball_minkowski_sum(x, zero).gamma == 1);
}

TEST_CASE("box_intersect") {
    auto f = F2();
    Ball o(FElem::zero(f), 0), t2o(FElem::zero(f), 1);
    Box b1{{o, t2o}}, b2{{t2o, o}};
    auto i = box_intersect(b1, b2);
    REQUIRE(i.has_value());
    CHECK(*i == Box{{t2o, t2o}});

    Box b3{{Ball(FElem::one(f), 1), o}};
    // first coordinates are disjoint classes at the same level
    Box b4{{t2o, o}};
    CHECK_FALSE(box_intersect(b4, b3).has_value());
    CHECK(*box_intersect(b1, b1) == b1);
    CHECK_THROWS_AS(box_intersect(b1, Box{{o}}), DimensionMismatch);
}

TEST_CASE("dist_measure on basic sets") {
    auto f = F2();
    DistBox O{{DistinguishedSet(FElem::zero(f), 0, 0)}};
    SetRingElem sO = ring_normalize(SetExpr::make_leaf(O), 2);
    CHECK(dist_measure(sO, 2) == LaurentX::one());

    DistBox d{{DistinguishedSet(FElem::zero(f), 2, 3)}};
    CHECK(dist_measure(ring_normalize(SetExpr::make_leaf(d), 2), 2) ==
          Monomial{2, 3}.to_laurent(2));

    // O minus t1 O: one residue class of two
    SetExpr diff = SetExpr::make_diff(
        SetExpr::make_leaf(O),
        {SetExpr::make_leaf(DistBox{{DistinguishedSet(FElem::zero(f), 0, 1)}})});
    SetRingElem s = ring_normalize(diff, 2);
    CHECK(dist_measure(s, 2) == LaurentX(Coeff(Rat(1, 2))));
    REQUIRE(s.components().size() == 1);
    CHECK(s.components()[0].holes.empty()); // resolved to the explicit class
    CHECK(s.components()[0].base == DistBox{{DistinguishedSet(FElem::one(f), 0, 1)}});

    CHECK_THROWS_AS(dist_measure(SetRingElem::raw({}), 2), NotNormalized);
}

TEST_CASE("ring_normalize") {
    auto f = F2();
    // O as the union of its residue classes
    std::vector<SetExpr> parts;
    for (gf_t c = 0; c < 2; ++c)
        parts.push_back(SetExpr::make_leaf(
            DistBox{{DistinguishedSet(FElem::from_e(EElem::from_gf(f, c)), 0, 1)}}));
    SetRingElem u = ring_normalize(SetExpr::make_union(parts), 2);
    CHECK(u.components().size() == 2);
    CHECK(dist_measure(u, 2) == LaurentX::one());

    // A minus A is empty
    Rng arng(1);
    DistBox a{{random_dist_set(f, arng, 2, 2)}};
    SetExpr empty = SetExpr::make_diff(SetExpr::make_leaf(a), {SetExpr::make_leaf(a)});
    CHECK(ring_normalize(empty, 2).components().empty());

    // a t2-deep hole stays in subtracted form
    DistBox base{{DistinguishedSet(FElem::zero(f), 0, 0)}};
    DistBox deep{{DistinguishedSet(FElem::zero(f), 1, 0)}};
    SetRingElem carved =
        ring_normalize(SetExpr::make_diff(SetExpr::make_leaf(base), {SetExpr::make_leaf(deep)}), 2);
    REQUIRE(carved.components().size() == 1);
    CHECK(carved.components()[0].holes.size() == 1);
    CHECK(dist_measure(carved, 2) ==
          LaurentX::one() - LaurentX::monomial(1, Coeff(1)));
}

TEST_CASE("glcoset_intersect") {
    auto f = F2();
    auto ring = ResRing::get(2, 1);
    ResSupport full = ResSupport::full_marker(ring, 1);

    MatF one = MatF::identity(f, 1);
    GLCongCoset c(one, IntMat::constant(1, 1), full);
    auto self = glcoset_intersect(c, c);
    REQUIRE(self.has_value());
    CHECK(self->contains(one + MatF::identity(f, 1).shifted2(1)));

    // n=1, q=2: (1 + t2 p^{-1}(O_E)) meets (1 + t2 t1)(1 + t2 p^{-1}(O_E))
    MatF b(f, 1);
    b.at(0, 0) = FElem::one(f) + (FElem::t2_pow(f, 1) * FElem::t1_pow(f, 1));
    GLCongCoset c2(b, IntMat::constant(1, 1), full);
    auto inter = glcoset_intersect(c, c2);
    REQUIRE(inter.has_value());

    // validate by pointwise membership on sampled points
    Rng rng(4);
    int checked = 0;
    for (int s = 0; s < 1000; ++s) {
        MatF x(f, 1);
        x.at(0, 0) = FElem::one(f) + random_in_ball(f, rng, 1);
        bool both = c.contains(x) && c2.contains(x);
        CHECK(both == inter->contains(x));
        if (both) ++checked;
    }
    CHECK(checked > 0);

    GLCongCoset far(one.shifted2(1), IntMat::constant(1, 1), full);
    CHECK_FALSE(glcoset_intersect(c, far).has_value());
    CHECK_THROWS_AS(GLCongCoset(one, IntMat::constant(1, 0), full), UnsupportedImageClass);
}

TEST_CASE("measure invariance under translation and scaling") {
    auto f = F2();
    Rng rng(21);
    for (int c = 0; c < 200; ++c) {
        DistinguishedSet s = random_dist_set(f, rng, 2, 2);
        LaurentX mu = s.measure().to_laurent(2);
        FElem shift = random_fpoly(f, rng, -2, 2, -2, 2, false);
        DistinguishedSet t(s.a + shift, s.gamma, s.delta);
        CHECK(t.measure().to_laurent(2) == mu);

        FElem g = random_fpoly(f, rng, -2, 2, -2, 2, true);
        auto dec = fe_unit_decompose(g);
        DistinguishedSet sc(g * s.a, s.gamma + dec.v2, s.delta + dec.v1);
        CHECK(sc.measure().to_laurent(2) == fe_abs(g).to_laurent(2) * mu);
        // scaled set is the exact image: sampled membership
        FElem p = s.a + random_in_dist(f, rng, s.gamma, s.delta);
        CHECK(s.contains(p));
        CHECK(sc.contains(g * p));
    }
}

TEST_CASE("oracle measures") {
    auto f = FieldConfig::make(5, 8, 8);
    SetExpr t2O = SetExpr::make_leaf(DistBox{{DistinguishedSet(FElem::zero(f), 1, 0)}});
    CHECK(oracle_measure(t2O, 5, f) == LaurentX::monomial(1, Coeff(1)));

    auto f2 = F2();
    SetExpr diff = SetExpr::make_diff(
        SetExpr::make_leaf(DistBox{{DistinguishedSet(FElem::zero(f2), 0, 0)}}),
        {SetExpr::make_leaf(DistBox{{DistinguishedSet(FElem::zero(f2), 0, 1)}})});
    CHECK(oracle_measure(diff, 2, f2) == LaurentX(Coeff(Rat(1, 2))));

    // mixed strata are outside the oracle class
    SetExpr mixed = SetExpr::make_diff(
        SetExpr::make_leaf(DistBox{{DistinguishedSet(FElem::zero(f2), 0, 0)}}),
        {SetExpr::make_leaf(DistBox{{DistinguishedSet(FElem::zero(f2), 1, 0)}})});
    CHECK_THROWS_AS(oracle_measure(mixed, 2, f2), UnsupportedByOracle);
}
