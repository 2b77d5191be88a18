#include "doctest.h"
#include "helpers.hpp"

#include "bhk/core/blaschke.hpp"
#include "bhk/core/circle.hpp"
#include "bhk/core/errors.hpp"
#include "bhk/core/roots.hpp"

#include <cmath>
#include <numbers>

using namespace bhk;
using namespace bhk::test;

namespace {

std::complex<double> circle_point(int k, int n) { return std::polar(1.0, 2.0 * std::numbers::pi * k / n + 0.1); }

// Riemann sum of zeta^{-k} r(zeta) over n equispaced circle points.
std::complex<double> sampled_coefficient(const RationalFunction& r, int k, int n = 1024) {
    std::complex<double> acc = 0.0;
    for (int t = 0; t < n; ++t) {
        std::complex<double> zeta = std::polar(1.0, 2.0 * std::numbers::pi * t / n);
        acc += std::pow(zeta, -k) * r(zeta);
    }
    return acc / static_cast<double>(n);
}

} // namespace

TEST_CASE("gaussian rationals parse and print exactly") {
    CHECK(GaussianRational::parse("1/2+1/3i") == gi(1, 2, 1, 3));
    CHECK(GaussianRational::parse("-i") == gi(0, 1, -1, 1));
    CHECK(GaussianRational::parse("3") == q(3));
    CHECK(GaussianRational::parse("2/4").str() == "1/2");
    CHECK((gi(1, 2, 1, 3) * gi(1, 2, 1, 3).inverse()).is_one());
    CHECK_THROWS(GaussianRational::parse("1/0"));
    CHECK_THROWS(GaussianRational::parse("abc"));
}

TEST_CASE("field axioms hold bit-exactly on generated triples") {
    Gen g(11);
    for (int t = 0; t < 200; ++t) {
        GaussianRational a = g.small(), b = g.small(), c = g.small();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == GaussianRational(1));
    }
}

TEST_CASE("polynomial division, gcd and squarefree parts") {
    Polynomial p = Polynomial::from_roots({q(1), q(1), q(-2)});
    auto [qt, r] = Polynomial::divmod(p, Polynomial::from_roots({q(1)}));
    CHECK(r.is_zero());
    CHECK(qt == Polynomial::from_roots({q(1), q(-2)}));
    CHECK(gcd(p, p.derivative()) == Polynomial::from_roots({q(1)}));
    auto sf = squarefree_decomposition(p);
    REQUIRE(sf.size() == 2);
    CHECK(sf[0].first == Polynomial::from_roots({q(-2)}));
    CHECK(sf[1].second == 2);
    ExtendedGcd e = extended_gcd(Polynomial::from_roots({q(2)}), Polynomial::from_roots({q(3)}));
    CHECK(e.g.is_one());
    CHECK(e.s * Polynomial::from_roots({q(2)}) + e.t * Polynomial::from_roots({q(3)}) == Polynomial(1));
    CHECK(Polynomial().degree() == Polynomial::kZeroDegree);
    CHECK(Polynomial(std::vector<GaussianRational>{q(1), gi(0, 1, 2, 1)}).reflected() ==
          Polynomial(std::vector<GaussianRational>{gi(0, 1, -2, 1), q(1)}));
}

TEST_CASE("rational functions stay normalized") {
    RationalFunction r(Polynomial::from_roots({q(1), q(2)}), Polynomial::from_roots({q(1), q(3)}) * q(2));
    CHECK(r.den() == Polynomial::from_roots({q(3)}));
    CHECK(r.num() == Polynomial::from_roots({q(2)}) * q(1, 2));
    CHECK(zf() * zbar() == RationalFunction(1));
    CHECK((zf() + RationalFunction(1)).pow(-2) * (zf() + RationalFunction(1)).pow(2) == RationalFunction(1));
}

TEST_CASE("circle adjoint examples") {
    CHECK(circle_adjoint(zf()) == zbar());
    CHECK(circle_adjoint(RationalFunction(gi(1, 2, 3, 4))) == RationalFunction(gi(1, 2, -3, 4)));
    RationalFunction b = blaschke_factor(q(1, 2));
    RationalFunction s = circle_adjoint(b);
    for (int k = 0; k < 16; ++k) {
        auto zeta = circle_point(k, 16);
        CHECK(std::abs(s(zeta) - std::conj(b(zeta))) < 1e-13);
    }
    CHECK(s == b.inverse());
    CHECK_THROWS_AS(circle_adjoint(RationalFunction(1) / (zf() - RationalFunction(1))), DomainError);
}

TEST_CASE("circle adjoint is an involutive anti-homomorphism") {
    Gen g(5);
    for (int t = 0; t < 40; ++t) {
        RationalFunction r = g.analytic(2) * zbar().pow(static_cast<int>(g.integer(0, 2)));
        RationalFunction s = g.analytic(1);
        CHECK(circle_adjoint(circle_adjoint(r)) == r);
        CHECK(circle_adjoint(r * s) == circle_adjoint(r) * circle_adjoint(s));
        CHECK(circle_adjoint(r + s) == circle_adjoint(r) + circle_adjoint(s));
    }
}

TEST_CASE("pole split examples") {
    RationalFunction r = RationalFunction(1) / (zf() - RationalFunction(2)) + zbar();
    PoleSplit s = pole_split(r);
    CHECK(s.analytic == RationalFunction(1) / (zf() - RationalFunction(2)));
    CHECK(s.antianalytic == zbar());
    PoleSplit p = pole_split(zf().pow(2));
    CHECK(p.analytic == zf().pow(2));
    CHECK(p.antianalytic.is_zero());
    // residue of (z^2+1)/(z(z-3)) at 0 is 1/(-3)
    RationalFunction t = (zf().pow(2) + RationalFunction(1)) / (zf() * (zf() - RationalFunction(3)));
    PoleSplit ts = pole_split(t);
    CHECK(ts.antianalytic == RationalFunction(q(-1, 3)) * zbar());
    for (int k = 0; k < 32; ++k) {
        auto zeta = circle_point(k, 32);
        CHECK(std::abs(ts.analytic(zeta) + ts.antianalytic(zeta) - t(zeta)) < 1e-12);
    }
}

TEST_CASE("pole split reassembles and the antianalytic part has no nonnegative coefficients") {
    Gen g(17);
    for (int t = 0; t < 30; ++t) {
        RationalFunction r = g.analytic(2) / RationalFunction(Polynomial::from_roots({g.disk_point(), g.disk_point()}));
        PoleSplit s = pole_split(r);
        CHECK(s.analytic + s.antianalytic == r);
        CHECK(is_analytic(s.analytic));
        for (int k = 0; k < 6; ++k) CHECK(fourier_coefficient(s.antianalytic, k).is_zero());
    }
}

TEST_CASE("fourier coefficient examples") {
    CHECK(fourier_coefficient(zf().pow(3), 3) == q(1));
    CHECK(fourier_coefficient(zf().pow(3), 2).is_zero());
    RationalFunction geo = RationalFunction(1) / (RationalFunction(1) - RationalFunction(q(1, 2)) * zf());
    for (int n = 0; n < 6; ++n) CHECK(fourier_coefficient(geo, n) == GaussianRational(Rational(1, 1 << n)));
    for (int n = -4; n < 0; ++n) CHECK(fourier_coefficient(geo, n).is_zero());
    CHECK(fourier_coefficient(zbar(), -1) == q(1));
}

TEST_CASE("fourier coefficients agree with sampled integrals") {
    Gen g(23);
    for (int t = 0; t < 10; ++t) {
        RationalFunction r = g.analytic(2) / RationalFunction(Polynomial::from_roots({g.disk_point()})) +
                             g.analytic(1) * zbar();
        auto exact = fourier_coefficients(r, -4, 4);
        for (int k = -4; k <= 4; ++k)
            CHECK(std::abs(exact[static_cast<std::size_t>(k + 4)].to_complex() - sampled_coefficient(r, k)) < 1e-8);
    }
}

TEST_CASE("root location and disk tests") {
    CHECK(roots_in_open_disk(Polynomial::from_roots({q(1, 2), gi(0, 1, -2, 3)})));
    CHECK_FALSE(roots_in_open_disk(Polynomial::from_roots({q(1, 2), q(2)})));
    CHECK(roots_outside_closed_disk(Polynomial::from_roots({q(3), gi(1, 1, 1, 1)})));
    CHECK(circle_root(Polynomial::from_roots({q(1, 2), gi(3, 5, 4, 5)})).has_value());
    CHECK_FALSE(circle_root(Polynomial::from_roots({q(1, 2), q(2)})).has_value());
    DiskSplit d = split_disk(Polynomial::from_roots({q(1, 2), q(3), q(1, 2)}) * q(5));
    CHECK(d.inside == Polynomial::from_roots({q(1, 2), q(1, 2)}));
    CHECK(d.inside * d.outside == Polynomial::from_roots({q(1, 2), q(3), q(1, 2)}) * q(5));
    // z^2 - 2 z + 1/2 has roots 1 +- 1/sqrt 2, irrational
    Polynomial irr(std::vector<GaussianRational>{q(1, 2), q(-2), q(1)});
    CHECK_FALSE(try_split_disk(irr).has_value());
    CHECK(count_roots_in_open_disk(irr) == 1);
    CHECK(positive_on_circle(RationalFunction(4) - zf() - zbar()));
    CHECK_FALSE(positive_on_circle(RationalFunction(2) - zf() - zbar()));
    CHECK_FALSE(positive_on_circle(zf()));
}

TEST_CASE("scalar spectral factor reproduces the modulus") {
    RationalFunction s = RationalFunction(4) - zf() - zbar();
    ScalarSpectralFactor h(s);
    CHECK(h(0.0).real() > 0);
    CHECK(std::abs(h(0.0).imag()) < 1e-14);
    for (int k = 0; k < 16; ++k) {
        auto zeta = circle_point(k, 16);
        CHECK(std::abs(std::norm(h(zeta)) - s(zeta).real()) < 1e-12);
    }
}

TEST_CASE("scalar inner-outer examples") {
    RationalFunction h = zf().pow(2) * (zf() - RationalFunction(2));
    ScalarInnerOuter io = scalar_inner_outer(h);
    CHECK(io.inner.zeros() == std::map<GaussianRational, int>{{q(0), 2}});
    CHECK(io.inner.to_rational() * io.outer == h);
    ScalarInnerOuter one = scalar_inner_outer(RationalFunction(1));
    CHECK(one.inner.degree() == 0);
    CHECK(one.outer == RationalFunction(1));
    RationalFunction h3 = (zf() - RationalFunction(q(1, 2))) * (zf() - RationalFunction(3)) / (zf() - RationalFunction(4));
    ScalarInnerOuter io3 = scalar_inner_outer(h3);
    CHECK(io3.inner.zeros() == std::map<GaussianRational, int>{{q(1, 2), 1}});
    CHECK(io3.inner.to_rational() * io3.outer == h3);
    for (const auto& r : locate_roots(io3.outer.num())) CHECK(std::abs(r.value) > 1.0);
    for (int k = 0; k < 8; ++k) CHECK(std::abs(std::abs(io3.inner(circle_point(k, 8))) - 1.0) < 1e-12);
    CHECK_THROWS_AS(scalar_inner_outer(zf() - RationalFunction(1)), DomainError);
}

TEST_CASE("scalar gcd and lcm examples") {
    auto z2 = BlaschkeProduct::factor(q(0), 2), z3 = BlaschkeProduct::factor(q(0), 3);
    ScalarGcdLcm a = scalar_gcd_lcm({z2, z3});
    CHECK(a.gcd == z2);
    CHECK(a.lcm == z3);
    auto b1 = BlaschkeProduct::factor(q(1, 2)), b2 = BlaschkeProduct::factor(q(1, 3));
    ScalarGcdLcm b = scalar_gcd_lcm({b1, b2});
    CHECK(b.gcd.degree() == 0);
    CHECK(b.lcm == b1 * b2);
    auto z = BlaschkeProduct::factor(q(0));
    ScalarGcdLcm c = scalar_gcd_lcm({z * b1, z * b2});
    CHECK(c.gcd == z);
    CHECK(c.lcm == z * b1 * b2);
    for (const auto& x : {z * b1, z * b2}) {
        CHECK(c.gcd.divides(x));
        CHECK(x.divides(c.lcm));
    }
    CHECK_THROWS_AS(BlaschkeProduct::factor(q(1)), DomainError);
}

TEST_CASE("Blaschke products are unimodular on the circle") {
    Gen g(29);
    for (int t = 0; t < 20; ++t) {
        std::map<GaussianRational, int> zeros;
        for (int k = 0; k < 3; ++k) zeros[g.disk_point()] += 1;
        BlaschkeProduct b(zeros, UnimodularConstant(gi(3, 5, -4, 5)));
        for (int k = 0; k < 64; ++k) CHECK(std::abs(std::abs(b(circle_point(k, 64))) - 1.0) < 1e-10);
        RationalFunction r = b.to_rational();
        CHECK(r * circle_adjoint(r) == RationalFunction(1));
    }
}
