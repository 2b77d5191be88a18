#include "doctest.h"
#include "helpers.hpp"

#include "bhk/core/blaschke.hpp"
#include "bhk/core/circle.hpp"
#include "bhk/core/errors.hpp"
#include "bhk/core/roots.hpp"
#include "bhk/hankel/kernel.hpp"
#include "bhk/lattice/lattice.hpp"

using namespace bhk;
using namespace bhk::test;

namespace {

RationalFunction c(long n, long d = 1) { return RationalFunction(q(n, d)); }
RationalFunction b(long n, long d) { return blaschke_factor(q(n, d)); }

bool same(const MatrixInner& a, const MatrixInner& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if (a.cols() == 0) return true;
    return equal_up_to_right_unitary(a, b).has_value();
}

MatrixInner scalar(const RationalFunction& t) { return MatrixInner::from_explicit(RatMat{{t}}); }

// Inner functions of the closing worked example.
struct FinalExample {
    RationalFunction t1 = b(1, 2), t2 = zf().pow(2), t3 = b(-1, 3), t4 = zf() * b(1, 4);
    MatrixInner theta1 = MatrixInner::from_explicit(RatMat{{c(0), c(0)}, {t1, c(0)}, {c(0), t2}});
    MatrixInner theta2 = MatrixInner::from_scaled_columns(RatMat{{-t3, c(0)}, {t3, c(0)}, {c(0), t4}}, {Rational(2), Rational(1)});
    Atom a1{"a1"}, a2{"a2"};
    NSpanMatrix phi{{NSpanEntry(a1), 0, 0}, {0, NSpanEntry(circle_adjoint(t1)), 0}, {0, 0, NSpanEntry(circle_adjoint(t2))}};
    NSpanMatrix psi{{NSpanEntry(a2), NSpanEntry(a2), 0}, {0, NSpanEntry(circle_adjoint(t3)), 0}, {0, 0, NSpanEntry(circle_adjoint(t4))}};
    RationalFunction lcm24 = zf().pow(2) * b(1, 4);
};

QMat rotation(Gen& g) {
    const long triples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {1, 0, 1}};
    const auto& tr = triples[g.integer(0, 3)];
    GaussianRational cs = q(tr[0], tr[2]), sn = q(tr[1], tr[2]);
    return QMat{{cs, -sn}, {sn, cs}};
}

// U diag(B_a, B_b) V with rational rotations U, V.
MatrixInner random_square_inner(Gen& g) {
    RatMat d = RatMat::diagonal({blaschke_factor(g.disk_point()), g.integer(0, 1) ? zf() : c(1)});
    return MatrixInner::from_explicit(to_ratmat(rotation(g)) * d * to_ratmat(rotation(g)));
}

// One column: (cos, sin) B_a.
MatrixInner random_column_inner(Gen& g) {
    QMat u = rotation(g);
    RatMat v = to_ratmat(u.column(0)) * RatMat{{blaschke_factor(g.disk_point())}};
    return MatrixInner::from_explicit(v);
}

MatrixInner random_inner(Gen& g) { return g.integer(0, 2) == 0 ? random_column_inner(g) : random_square_inner(g); }

} // namespace

TEST_CASE("shift-invariant subspaces from generators") {
    auto zp = [](int k) { return zf().pow(k); };
    RatMat f{{c(1), c(1), zp(1), zp(2)}, {c(1), zp(1), zp(2), zp(3)}, {c(1), c(0), c(0), c(0)}};
    std::vector<RatMat> cols;
    for (std::size_t j = 0; j < 4; ++j) cols.push_back(f.column(j));
    ShiftInvariantSubspace s = shift_invariant_from_generators(cols);
    CHECK(s.inner.rows() == 3);
    CHECK(s.inner.cols() == 2);
    for (const auto& col : cols) CHECK(range_contains(s.inner, col));

    ShiftInvariantSubspace zs = shift_invariant_from_generators({RatMat{{zf()}}});
    CHECK(same(zs.inner, scalar(zf())));

    FinalExample ex;
    std::vector<RatMat> both;
    for (const auto* t : {&ex.theta1, &ex.theta2})
        for (std::size_t j = 0; j < t->cols(); ++j) both.push_back(t->generator().column(j));
    CHECK(shift_invariant_from_generators(both).inner.cols() == 3);

    CHECK_THROWS_AS(shift_invariant_from_generators({}), std::invalid_argument);
    CHECK_THROWS_AS(shift_invariant_from_generators({RatMat(2, 1)}), std::invalid_argument);
}

TEST_CASE("gcd examples") {
    GcdResult s = gcd_inner({scalar(zf() * b(1, 2)), scalar(zf() * b(1, 3))});
    CHECK(same(s.inner, scalar(zf())));
    REQUIRE(s.quotients.size() == 2);
    CHECK(s.inner.generator() * s.quotients[0] == RatMat{{zf() * b(1, 2)}});

    MatrixInner sq = MatrixInner::from_explicit(RatMat::diagonal({b(1, 2), zf()}));
    MatrixInner col = MatrixInner::from_scaled_columns(RatMat{{zf()}, {zf()}}, {Rational(2)});
    GcdResult g = gcd_inner({sq, col});
    CHECK(g.inner.cols() == 2);
    AuditReport rep = size_bound_audit(g.trace);
    CHECK(rep.lower == 2);
    CHECK(rep.upper == 2);

    CHECK(same(gcd_inner({sq, sq}).inner, sq));
    CHECK(same(gcd_inner({col, col}).inner, col));
    CHECK_THROWS_AS(gcd_inner({sq, scalar(zf())}), std::invalid_argument);
}

TEST_CASE("lcm examples") {
    LcmResult s = lcm_inner({scalar(zf().pow(2)), scalar(zf().pow(3))});
    CHECK(same(s.inner, scalar(zf().pow(3))));
    REQUIRE(s.trace.paths_agree.has_value());
    CHECK(*s.trace.paths_agree);

    MatrixInner sq = MatrixInner::from_explicit(RatMat::diagonal({b(1, 2), zf()}));
    MatrixInner col = MatrixInner::from_scaled_columns(RatMat{{zf()}, {zf()}}, {Rational(2)});
    CHECK(same(lcm_inner({sq, sq}).inner, sq));
    CHECK(same(lcm_inner({col, col}).inner, col));
    LcmResult sc = lcm_inner({sq, col});
    CHECK(sc.inner.cols() == 1);
    CHECK(size_bound_audit(sc.trace).within);

    MatrixInner tall = MatrixInner::from_explicit(RatMat{{c(1), c(0)}, {c(0), zf()}, {c(0), c(0)}});
    LcmResult t = lcm_inner({tall, tall});
    CHECK(t.trace.paths == std::vector<std::string>{"direct"});
    CHECK(same(t.inner, tall));
}

TEST_CASE("closing worked example end to end") {
    FinalExample ex;
    CHECK(independency(ex.phi) == 1);
    CHECK(independency(ex.psi) == 1);
    CHECK(same(kernel_symbolic(ex.phi), ex.theta1));
    CHECK(same(kernel_symbolic(ex.psi), ex.theta2));

    MatrixInner expected_lcm = MatrixInner::from_explicit(RatMat{{c(0)}, {c(0)}, {ex.lcm24}});
    LcmResult via_symbols = lcm_from_symbols({ex.phi, ex.psi});
    REQUIRE(via_symbols.trace.stacked_independency.has_value());
    CHECK(*via_symbols.trace.stacked_independency == 2);
    CHECK(same(via_symbols.inner, expected_lcm));

    LcmResult direct = lcm_inner({ex.theta1, ex.theta2});
    CHECK(direct.trace.paths == std::vector<std::string>{"direct"});
    CHECK(same(direct.inner, expected_lcm));
    AuditReport lr = size_bound_audit(via_symbols.trace);
    CHECK(lr.lower == 1);
    CHECK(lr.upper == 2);

    GcdResult g = gcd_inner({ex.theta1, ex.theta2});
    CHECK(g.inner.rows() == 3);
    CHECK(g.inner.cols() == 3);
    RationalFunction d = det(g.inner.generator());
    CHECK(count_roots_in_open_disk(d.num()) == 3);
    AuditReport gr = size_bound_audit(g.trace);
    CHECK(gr.lower == 2);
    CHECK(gr.upper == 3);
}

TEST_CASE("size bound audit") {
    LatticeTrace lcm;
    lcm.op = LatticeOp::Lcm;
    lcm.n = 3;
    lcm.input_cols = {2, 2};
    lcm.input_square = {false, false};
    lcm.result_cols = 1;
    AuditReport r = size_bound_audit(lcm);
    CHECK(r.lower == 1);
    CHECK(r.upper == 2);

    LatticeTrace gcd;
    gcd.op = LatticeOp::Gcd;
    gcd.n = 3;
    gcd.input_cols = {1, 1};
    gcd.input_square = {false, false};
    gcd.result_cols = 2;
    r = size_bound_audit(gcd);
    CHECK(r.lower == 1);
    CHECK(r.upper == 2);
    gcd.result_cols = 3;
    CHECK_THROWS_AS(size_bound_audit(gcd), InvariantViolation);

    LatticeTrace mixed = lcm;
    mixed.input_cols = {3, 1};
    mixed.input_square = {true, false};
    mixed.result_cols = 1;
    r = size_bound_audit(mixed);
    CHECK(r.lower == 1);
    CHECK(r.upper == 1);
    bool variant_flagged = false;
    for (const auto& line : r.lines)
        if (line.find("variant lower bound") != std::string::npos && line.find("differs") != std::string::npos) variant_flagged = true;
    CHECK(variant_flagged);
}

TEST_CASE("backward-shift-invariant subspaces") {
    RationalFunction a = c(1, 2) * zf() - c(1, 2), bb = c(1, 2) * zf() + c(1, 2);
    MatrixInner expected = MatrixInner::from_explicit(RatMat{{a, bb}, {bb, a}});
    ModelSubspace m = sstar_invariant_from_generators({RatMat{{c(1)}, {c(1)}}});
    CHECK(same(m.inner, expected));
    CHECK(m.dim == 1);
    MatrixInner shifted = MatrixInner::from_scaled_columns(RatMat{{zf()}, {zf()}}, {Rational(2)});
    CHECK_FALSE(same(m.inner, shifted));

    ModelSubspace m2 = sstar_invariant_from_generators({RatMat{{c(1)}, {zf()}}});
    CHECK(m2.inner.is_square());
    CHECK(m2.dim == 2);
    CHECK(m2.dimension_text() == "2");

    ModelSubspace m1 = sstar_invariant_from_generators({RatMat{{c(1)}}});
    CHECK(same(m1.inner, scalar(zf())));
    CHECK(m1.dim == 1);
}

TEST_CASE("kernel columns are orthogonal to the generators' backward orbit") {
    Gen g(83);
    for (int t = 0; t < 6; ++t) {
        RatMat f(2, 1);
        for (std::size_t i = 0; i < 2; ++i) f(i, 0) = g.analytic(2);
        if (f.is_zero()) continue;
        ModelSubspace m = sstar_invariant_from_generators({f});
        const RatMat& v = m.inner.generator();
        for (std::size_t j = 0; j < v.cols(); ++j)
            for (int k = 0; k <= 8; ++k) {
                RationalFunction pairing = (circle_adjoint(f) * v.column(j))(0, 0) * zf().pow(k);
                CHECK(fourier_coefficient(pairing, 0).is_zero());
            }
    }
}

TEST_CASE("cyclic vectors") {
    CHECK_FALSE(cyclic_test(RatMat{{c(1)}, {zf()}}));
    CHECK_FALSE(cyclic_test(RatMat{{c(1)}}));
    NSpanMatrix atoms{{NSpanEntry(Atom{"v1"}), NSpanEntry(Atom{"v2"})}};
    CHECK(cyclic_test_conjugates(atoms));
    NSpanMatrix partial{{NSpanEntry(Atom{"v1"}), NSpanEntry(zbar())}};
    CHECK_FALSE(cyclic_test_conjugates(partial));

    Gen g(97);
    for (int t = 0; t < 20; ++t) {
        RatMat f(static_cast<std::size_t>(g.integer(1, 3)), 1);
        for (std::size_t i = 0; i < f.rows(); ++i) f(i, 0) = g.analytic(static_cast<int>(g.integer(0, 2)));
        if (f.is_zero()) f(0, 0) = c(1);
        CHECK_FALSE(cyclic_test(f));
    }
}

TEST_CASE("lattice laws on generated inner functions") {
    Gen g(131);
    for (int t = 0; t < 6; ++t) {
        MatrixInner x = random_inner(g), y = random_inner(g), w = random_inner(g);
        CAPTURE(x.describe());
        CAPTURE(y.describe());

        GcdResult gxy = gcd_inner({x, y});
        CHECK(same(gxy.inner, gcd_inner({y, x}).inner));
        CHECK(same(gcd_inner({gxy.inner, w}).inner, gcd_inner({x, gcd_inner({y, w}).inner}).inner));
        CHECK(same(gcd_inner({x, x}).inner, x));
        CHECK(range_contains(gxy.inner, x.generator()));
        CHECK(range_contains(gxy.inner, y.generator()));
        size_bound_audit(gxy.trace);

        LcmResult lxy = lcm_inner({x, y});
        CHECK(same(lxy.inner, lcm_inner({y, x}).inner));
        CHECK(same(lcm_inner({x, x}).inner, x));
        if (lxy.inner.cols() > 0) {
            CHECK(range_contains(x, lxy.inner.generator()));
            CHECK(range_contains(y, lxy.inner.generator()));
        }
        size_bound_audit(lxy.trace);
        if (lxy.inner.is_square() && x.is_square() && w.is_square()) {
            LcmResult left = lcm_inner({lxy.inner, w});
            LcmResult right = lcm_inner({x, lcm_inner({y, w}).inner});
            CHECK(same(left.inner, right.inner));
        }
    }
}
