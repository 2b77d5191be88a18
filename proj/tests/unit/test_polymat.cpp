#include "doctest.h"
#include "helpers.hpp"

#include "bhk/core/blaschke.hpp"
#include "bhk/polymat/polymat.hpp"

#include <Eigen/SVD>

using namespace bhk;
using namespace bhk::test;

namespace {

PolyMat pm(std::initializer_list<std::initializer_list<Polynomial>> rows) { return PolyMat(rows); }
Polynomial zp(int k) { return Polynomial::monomial(k); }

// Numeric rank at a circle point.
int sampled_rank(const RatMat& m, std::complex<double> zeta) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(evaluate(m, zeta));
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > 1e-8 * s(0)) ++r;
    return r;
}

RatMat random_ratmat(Gen& g, std::size_t n, std::size_t m, int rank) {
    RatMat a(n, static_cast<std::size_t>(rank)), b(static_cast<std::size_t>(rank), m);
    for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < rank; ++j) a(i, static_cast<std::size_t>(j)) = g.analytic(1);
    for (int i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < m; ++j) b(static_cast<std::size_t>(i), j) = g.analytic(1);
    return a * b;
}

} // namespace

TEST_CASE("generic rank examples") {
    PolyMat f = pm({{1, 1, zp(1), zp(2)}, {1, zp(1), zp(2), zp(3)}, {1, 0, 0, 0}});
    CHECK(generic_rank(f) == 2);
    CHECK(generic_rank(PolyMat::identity(4)) == 4);
    CHECK(generic_rank(pm({{zp(1), zp(2)}, {zp(3), zp(4)}})) == 1);
    CHECK(generic_rank(PolyMat(2, 3)) == 0);
}

TEST_CASE("generic rank matches sampled numeric rank") {
    Gen g(31);
    for (int t = 0; t < 15; ++t) {
        int r = static_cast<int>(g.integer(1, 3));
        RatMat m = random_ratmat(g, 3, 4, r);
        int exact = generic_rank(m);
        for (int s = 0; s < 5; ++s) CHECK(sampled_rank(m, std::polar(1.0, 0.3 + 1.2 * s)) == exact);
    }
}

TEST_CASE("classical adjoint examples and determinant identity") {
    RatMat m{{RationalFunction(1), RationalFunction(2)}, {RationalFunction(3), RationalFunction(4)}};
    CHECK(classical_adjoint(m) == RatMat{{RationalFunction(4), RationalFunction(-2)}, {RationalFunction(-3), RationalFunction(1)}});
    CHECK(classical_adjoint(RatMat::identity(3)) == RatMat::identity(3));
    RatMat d = RatMat::diagonal({zf(), blaschke_factor(q(1, 2))});
    RatMat adj = classical_adjoint(d);
    CHECK(adj == RatMat::diagonal({blaschke_factor(q(1, 2)), zf()}));
    CHECK(d * adj == det(d) * RatMat::identity(2));
    Gen g(37);
    for (int t = 0; t < 10; ++t) {
        RatMat a(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) a(i, j) = g.analytic(1);
        RatMat aa = classical_adjoint(a);
        CHECK(a * aa == det(a) * RatMat::identity(3));
        CHECK(aa * a == det(a) * RatMat::identity(3));
        CHECK(det(aa) == det(a).pow(2));
    }
}

TEST_CASE("hermite kernel basis examples") {
    PolyMat k1 = hermite_kernel_basis(pm({{zp(1), zp(1)}}));
    CHECK(k1 == pm({{1}, {-1}}));
    PolyMat k2 = hermite_kernel_basis(pm({{1, -zp(1)}}));
    CHECK(k2 == pm({{zp(1)}, {1}}));
    CHECK(hermite_kernel_basis(PolyMat(2, 2)) == PolyMat::identity(2));
}

TEST_CASE("kernel bases annihilate and have full rank") {
    Gen g(41);
    for (int t = 0; t < 15; ++t) {
        int r = static_cast<int>(g.integer(1, 2));
        ClearedMatrix c = clear_denominators(random_ratmat(g, 2, 4, r));
        PolyMat k = hermite_kernel_basis(c.num);
        CHECK(k.cols() == static_cast<std::size_t>(4 - r));
        CHECK((c.num * k).is_zero());
        CHECK(generic_rank(k) == 4 - r);
        // saturated: the maximal minors of a kernel basis have no common factor
        CHECK(maximal_minors_gcd(k).is_one());
        PolyMat l = left_kernel_basis(c.num);
        CHECK((l * c.num).is_zero());
    }
}

TEST_CASE("interpolation module examples") {
    InterpolationBasis a = interpolation_module_basis(pm({{1}}), zp(1));
    CHECK(a.basis == pm({{zp(1)}}));
    CHECK(a.codimension == 1);

    InterpolationBasis b = interpolation_module_basis(pm({{1, 1}}), zp(1));
    CHECK(det(b.basis).degree() == 1);
    // generates (1,-1) and (z,0)
    RatMat gi = *inverse(to_ratmat(b.basis));
    for (const PolyMat& v : {pm({{1}, {-1}}), pm({{zp(1)}, {0}})}) {
        RatMat c = gi * to_ratmat(v);
        for (std::size_t i = 0; i < 2; ++i) CHECK(c(i, 0).is_polynomial());
    }

    InterpolationBasis c = interpolation_module_basis(pm({{zp(1) + 1}}), zp(2));
    CHECK(c.basis == pm({{zp(2)}}));
}

TEST_CASE("interpolation module agrees with brute-force solution counts") {
    Gen g(43);
    for (int t = 0; t < 10; ++t) {
        Polynomial p = Polynomial::from_roots({g.disk_point(), g.disk_point()});
        PolyMat b(1, 2);
        b(0, 0) = g.polynomial(1);
        b(0, 1) = g.polynomial(1);
        InterpolationBasis ib = interpolation_module_basis(b, p);
        // solutions of degree <= 3 in each coordinate: linear conditions on 8 coefficients
        const int d = 3;
        QMat cond(static_cast<std::size_t>(p.degree()), 2 * (d + 1));
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k <= d; ++k) {
                Polynomial rem = Polynomial::divmod(b(0, static_cast<std::size_t>(j)).shifted(k), p).second;
                for (int s = 0; s < p.degree(); ++s) cond(static_cast<std::size_t>(s), static_cast<std::size_t>(j * (d + 1) + k)) = rem.coeff(s);
            }
        int brute = 2 * (d + 1) - rank(cond);
        int predicted = 0;
        for (int deg : column_degrees(ib.basis)) predicted += std::max(0, d - deg + 1);
        CHECK(brute == predicted);
        CHECK(ib.basis * ib.cofactor == p * PolyMat::identity(2));
    }
}
