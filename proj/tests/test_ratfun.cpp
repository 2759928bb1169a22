#include <doctest.h>

#include "gpr/ratfun.hpp"
#include "support/corpus.hpp"

using namespace gpr;

namespace {

Polynomial poly(std::initializer_list<Cpx> ascending) {
    return Polynomial(std::vector<Cpx>(ascending));
}

RationalFunction rf(std::initializer_list<Cpx> num, std::initializer_list<Cpx> den) {
    return RationalFunction::make(poly(num), poly(den));
}

}  // namespace

TEST_CASE("make normalizes and cancels") {
    RationalFunction f = rf({-4, 0, 1}, {0, 0, 1});
    CHECK(f.num() == poly({-4, 0, 1}));
    CHECK(f.den() == poly({0, 0, 1}));

    CHECK(approx_equal(rf({-4, 0, 1}, {-2, 1}), rf({2, 1}, {1})));
    CHECK(approx_equal(rf({0, 1}, {0, 1}), RationalFunction(Cpx(1.0))));
    CHECK_THROWS_AS(RationalFunction::make(poly({1}), Polynomial()), Error);
}

TEST_CASE("sharp on the worked examples") {
    // 4/(7-3s) -> 4/(7+3s)
    CHECK(approx_equal(rf({4}, {7, -3}).sharp(), rf({4}, {7, 3})));
    // (s-2)/s -> (s+2)/s: then g g# = (s^2-4)/s^2 as in the factored family.
    RationalFunction g = rf({-2, 1}, {0, 1});
    CHECK(approx_equal(g.sharp(), rf({2, 1}, {0, 1})));
    CHECK(approx_equal(g.mul(g.sharp()), rf({-4, 0, 1}, {0, 0, 1})));
    for (double w : {0.5, 1.0, 2.0, -1.3, 3.7}) {
        Cpx lhs = g.mul(g.sharp()).value_at(Cpx(0, w));
        CHECK(std::abs(lhs.imag()) < 1e-12 * (1.0 + std::abs(lhs)));
    }
    CHECK(approx_equal(RationalFunction(Cpx(1.0)).sharp(), RationalFunction(Cpx(1.0))));
}

TEST_CASE("arithmetic reproduces the degree-one blend") {
    CHECK(approx_equal(rf({1, 1}, {1}).invert(), rf({1}, {1, 1})));

    // (2/9) psi_a + (7/9) psi_b = 4/(7-3s)
    Polynomial den = poly({2, 0, 1}) * poly({49, 0, -9});
    RationalFunction psi_a = RationalFunction::make(poly({0, 108, 0, 12}), den);
    RationalFunction psi_b = RationalFunction::make(poly({72, 0, 36, 12}), den);
    RationalFunction blend =
        psi_a.scale(Cpx(2.0 / 9.0)).add(psi_b.scale(Cpx(7.0 / 9.0)));
    CHECK(approx_equal(blend, rf({4}, {7, -3})));

    // p_d = (1/6)(8s + 7/s) = (8s^2+7)/(6s)
    RationalFunction p_d = RationalFunction::variable()
                               .scale(Cpx(8.0))
                               .add(rf({7}, {0, 1}))
                               .scale(Cpx(1.0 / 6.0));
    CHECK(approx_equal(p_d, rf({7, 0, 8}, {0, 6})));
}

TEST_CASE("composition") {
    RationalFunction inv_s = rf({1}, {0, 1});
    CHECK(approx_equal(inv_s.compose(inv_s), RationalFunction::variable()));

    RationalFunction f = rf({1, 2}, {3, 0, 1});
    CHECK(approx_equal(RationalFunction::variable().compose(f), f));

    RationalFunction sum = RationalFunction::variable().add(inv_s);
    RationalFunction cube = rf({0, 0, 0, 1}, {1});
    CHECK(approx_equal(sum.compose(cube), rf({1, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 1})));
}

TEST_CASE("evaluation and poles") {
    RationalFunction gg = rf({16}, {49, 0, -9});
    CHECK(gg.value_at(Cpx(2)).real() == doctest::Approx(16.0 / 13.0));

    RationalFunction psi_d = RationalFunction::make(
        poly({7, 0, 8}).scaled(Cpx(8.0)), poly({0, 3}) * poly({49, 0, -9}));
    CHECK(psi_d.value_at(Cpx(1)).real() == doctest::Approx(1.0));

    EvalResult at_pole = rf({1}, {0, 1}).evaluate(Cpx(0.0));
    CHECK(at_pole.is_pole);
}

TEST_CASE("pole-zero form") {
    PoleZeroGain pz = rf({-2, 1}, {0, 1}).pole_zero();
    CHECK(std::abs(pz.gain - Cpx(1.0)) < 1e-12);
    REQUIRE(pz.zeros.roots.size() == 1);
    CHECK(std::abs(pz.zeros.roots[0].location - Cpx(2.0)) < 1e-10);
    REQUIRE(pz.poles.roots.size() == 1);
    CHECK(std::abs(pz.poles.roots[0].location) < 1e-10);

    PoleZeroGain pz2 = rf({-4, 0, 1}, {0, 0, 1}).pole_zero();
    CHECK(pz2.zeros.roots.size() == 2);
    REQUIRE(pz2.poles.roots.size() == 1);
    CHECK(pz2.poles.roots[0].multiplicity == 2);

    PoleZeroGain pz3 = RationalFunction(Cpx(7.0)).pole_zero();
    CHECK(std::abs(pz3.gain - Cpx(7.0)) < 1e-12);
    CHECK(pz3.zeros.roots.empty());
    CHECK(pz3.poles.roots.empty());
}

TEST_CASE("region split") {
    RootList roots;
    roots.roots = {{Cpx(2), 1}, {Cpx(0), 1}, {Cpx(-1), 1}};
    RegionSplit split = region_split(roots);
    CHECK(split.plus.roots.size() == 1);
    CHECK(split.axis.roots.size() == 1);
    CHECK(split.minus.roots.size() == 1);

    RootList imag;
    imag.roots = {{Cpx(0, 1), 1}, {Cpx(0, -1), 1}};
    RegionSplit s2 = region_split(imag);
    CHECK(s2.plus.roots.empty());
    CHECK(s2.axis.roots.size() == 2);
    CHECK(s2.minus.roots.empty());

    // Numerator and denominator of (s+2)^2 (s-2)/s^3.
    Polynomial num = poly({2, 1}) * poly({2, 1}) * poly({-2, 1});
    RegionSplit zs = region_split(find_roots(num));
    CHECK(zs.plus.roots.size() == 1);
    CHECK(zs.minus.roots.size() == 1);
    CHECK(zs.minus.roots[0].multiplicity == 2);
    RegionSplit ps = region_split(find_roots(poly({0, 0, 0, 1})));
    REQUIRE(ps.axis.roots.size() == 1);
    CHECK(ps.axis.roots[0].multiplicity == 3);
}

TEST_CASE("degrees of the five cone samples") {
    RationalFunction psi1 = rf({-2, 1}, {0, 1});
    RationalFunction psi2 = RationalFunction::make(poly({-2, 1}), poly({0, 1}) * poly({2, 1}));
    RationalFunction psi3 = rf({-4, 0, 1}, {0, 0, 1});
    RationalFunction psi4 =
        RationalFunction::make(poly({2, 1}) * poly({2, 1}) * poly({-2, 1}), poly({0, 0, 0, 1}));
    RationalFunction psi5 = RationalFunction::make(
        poly({-4, 0, 1}) * poly({Cpx(0, 2), 1}), poly({0, 1}) * poly({Cpx(0, 1), 1}));
    CHECK(psi1.degree() == 1);
    CHECK(psi2.degree() == 2);
    CHECK(psi3.degree() == 2);
    CHECK(psi4.degree() == 3);
    CHECK(psi5.degree() == 3);
}

TEST_CASE("sharp is an involutive algebra homomorphism") {
    testing::Rng rng(777001);
    for (int iter = 0; iter < 200; ++iter) {
        RationalFunction f = testing::random_rational(rng, 4);
        RationalFunction g = testing::random_rational(rng, 4);
        CHECK(approx_equal(f.sharp().sharp(), f));
        CHECK(approx_equal(f.add(g).sharp(), f.sharp().add(g.sharp())));
        CHECK(approx_equal(f.mul(g).sharp(), f.sharp().mul(g.sharp())));
        if (!f.is_zero()) CHECK(approx_equal(f.invert().sharp(), f.sharp().invert()));
        double w = testing::uniform(rng, -4.0, 4.0);
        EvalResult a = f.sharp().evaluate(Cpx(0, w));
        EvalResult b = f.evaluate(Cpx(0, w));
        if (!a.is_pole && !b.is_pole)
            CHECK(std::abs(a.value - std::conj(b.value)) <= 1e-8 * (1.0 + std::abs(b.value)));
    }
}

TEST_CASE("pole-zero round trip") {
    testing::Rng rng(90125);
    for (int iter = 0; iter < 100; ++iter) {
        RationalFunction f = testing::random_rational(rng, 5);
        if (f.is_zero()) continue;
        RationalFunction back = RationalFunction::from_pole_zero(f.pole_zero());
        for (int k = 0; k < 32; ++k) {
            double angle = 2.0 * M_PI * k / 32.0 + 0.1;
            Cpx s = Cpx(std::cos(angle), std::sin(angle));
            EvalResult a = f.evaluate(s);
            EvalResult b = back.evaluate(s);
            if (a.is_pole || b.is_pole) continue;
            CHECK(std::abs(a.value - b.value) <= 1e-8 * (1.0 + std::abs(a.value)));
        }
    }
}
