#include <doctest.h>

#include "hlf/laurent.hpp"
#include "hlf/randomgen.hpp"

using namespace hlf;

TEST_CASE("addition basics") {
    LaurentX x = LaurentX::monomial(1, Coeff(1));
    CHECK(lx_add(x + LaurentX(1), LaurentX(-1)) == x);
    LaurentX f = LaurentX::monomial(-2, Coeff(Rat(3, 7))) + LaurentX(5);
    CHECK(lx_add(LaurentX::zero(), f) == f);
    // q^{-1} X + q^{-1} X at q = 2 is X
    LaurentX half_x = LaurentX::monomial(1, Coeff(Rat(1, 2)));
    CHECK(lx_add(half_x, half_x) == x);
}

TEST_CASE("multiplication basics") {
    LaurentX x = LaurentX::monomial(1, Coeff(1));
    LaurentX xinv = LaurentX::monomial(-1, Coeff(1));
    CHECK(lx_mul(xinv, x) == LaurentX::one());

    LaurentX one_plus_x = LaurentX(1) + x;
    LaurentX sq = lx_mul(one_plus_x, one_plus_x);
    CHECK(sq == LaurentX(1) + LaurentX::monomial(1, Coeff(2)) + LaurentX::monomial(2, Coeff(1)));

    // monomial exponent addition against direct rational arithmetic
    Monomial m1{1, 2}, m2{2, 3};
    CHECK((m1 * m2) == Monomial{3, 5});
    CHECK(lx_mul(m1.to_laurent(2), m2.to_laurent(2)) == (m1 * m2).to_laurent(2));
    CHECK((m1 * m2).to_laurent(2) == LaurentX::monomial(3, Coeff(Rat(1, 32))));
}

TEST_CASE("guarded summation") {
    GuardedFamily fam;
    fam.floor = 0;
    fam.add(LaurentX(1));
    fam.add(LaurentX::monomial(1, Coeff(1)));
    fam.add(LaurentX::monomial(2, Coeff(1)));
    CHECK(lx_guarded_sum(fam) ==
          LaurentX(1) + LaurentX::monomial(1, Coeff(1)) + LaurentX::monomial(2, Coeff(1)));

    GuardedFamily bad;
    bad.floor = 0;
    bad.add(LaurentX::monomial(-5, Coeff(1)));
    CHECK_THROWS_AS(lx_guarded_sum(bad), FloorViolation);

    // partition of O into q = 3 residue classes
    GuardedFamily partition;
    partition.floor = 0;
    for (int i = 0; i < 3; ++i) partition.add(LaurentX(Coeff(Rat(1, 3))));
    CHECK(lx_guarded_sum(partition) == LaurentX::one());
}

TEST_CASE("rendering") {
    CHECK(lx_render(LaurentX(Coeff(Rat(1, 2)))) == "1/2");
    CHECK(lx_render(LaurentX::monomial(1, Coeff(Rat(1, 4)))) == "(1/4)*X");
    LaurentX v = LaurentX::monomial(-1, Coeff(1)) + LaurentX::monomial(1, Coeff(1));
    CHECK(lx_render(v) == "X^-1 + X");
    CHECK(lx_render(LaurentX::zero()) == "0");
    CHECK(lx_parse("0") == LaurentX::zero());
}

TEST_CASE("render/parse roundtrip on random values") {
    Rng rng(99);
    for (int c = 0; c < 300; ++c) {
        LaurentX v = random_laurent(rng, -5, 5);
        if (rng.coin()) v += LaurentX(Coeff(Rat(rng.uniform(-9, 9), 1 + rng.uniform(0, 5))));
        std::string s = lx_render(v);
        CHECK(lx_parse(s) == v);
        CHECK(lx_render(lx_parse(s)) == s);
    }
    // gaussian coefficients round-trip too
    LaurentX g = LaurentX::monomial(2, Coeff(Rat(1, 3), Rat(-2, 5)));
    CHECK(lx_parse(lx_render(g)) == g);
}

TEST_CASE("ring axioms on random triples") {
    Rng rng(7);
    for (int c = 0; c < 200; ++c) {
        LaurentX a = random_laurent(rng, -4, 4);
        LaurentX b = random_laurent(rng, -4, 4);
        LaurentX d = random_laurent(rng, -4, 4);
        CHECK((a + b) + d == a + (b + d));
        CHECK((a * b) * d == a * (b * d));
        CHECK(a * (b + d) == a * b + a * d);
    }
}

TEST_CASE("monomial embedding is injective and multiplicative") {
    for (int x1 = -10; x1 <= 10; ++x1)
        for (int e1 = -10; e1 <= 10; ++e1) {
            Monomial m{x1, e1};
            Monomial w{-x1, 3 - e1};
            CHECK((m * w).to_laurent(3) == m.to_laurent(3) * w.to_laurent(3));
            if (!(m == w)) CHECK(m.to_laurent(3) != w.to_laurent(3));
        }
}
