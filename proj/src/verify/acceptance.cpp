#include "bhk/verify/acceptance.hpp"

#include "bhk/core/blaschke.hpp"
#include "bhk/core/circle.hpp"
#include "bhk/core/errors.hpp"
#include "bhk/hankel/kernel.hpp"
#include "bhk/inner/inner_outer.hpp"
#include "bhk/lattice/lattice.hpp"

#include <functional>
#include <random>
#include <sstream>

namespace bhk::verify {

namespace {

RationalFunction c(long n, long d = 1) { return RationalFunction(GaussianRational(Rational(n, d))); }
RationalFunction zf() { return RationalFunction::z(); }
RationalFunction zbar() { return RationalFunction::z_pow(-1); }

// Two-point unitary-valued inner [[t/2 - 1/2, t/2 + 1/2], [t/2 + 1/2, t/2 - 1/2]].
RatMat half_matrix(const RationalFunction& t) {
    RationalFunction a = c(1, 2) * t - c(1, 2), b = c(1, 2) * t + c(1, 2);
    return RatMat{{a, b}, {b, a}};
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
    GaussianRational disk_point() {
        while (true) {
            GaussianRational a(Rational(integer(-4, 4), 5), Rational(integer(-4, 4), 5));
            if (a.norm2() < 1) return a;
        }
    }
    GaussianRational distinct_disk_point(const std::vector<GaussianRational>& avoid) {
        while (true) {
            GaussianRational a = disk_point();
            if (std::find(avoid.begin(), avoid.end(), a) == avoid.end()) return a;
        }
    }
    RationalFunction analytic() {
        std::vector<GaussianRational> num{GaussianRational(integer(-3, 3)), GaussianRational(integer(-3, 3))};
        if (num[0].is_zero() && num[1].is_zero()) num[0] = 1;
        RationalFunction r{Polynomial(num)};
        if (integer(0, 1)) r = r / RationalFunction(Polynomial(std::vector<GaussianRational>{GaussianRational(integer(2, 4)), GaussianRational(1)}));
        return r;
    }
    RatMat nonsingular(std::size_t s) {
        while (true) {
            RatMat a(s, s);
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) a(i, j) = analytic();
            if (!det(a).is_zero()) return a;
        }
    }
    RatMat full_rank(std::size_t rows, std::size_t cols) {
        while (true) {
            RatMat a(rows, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) a(i, j) = analytic();
            if (generic_rank(a) == static_cast<int>(std::min(rows, cols))) return a;
        }
    }

private:
    std::mt19937_64 g_;
};

bool exact_match(const MatrixInner& got, const MatrixInner& want, std::string& why) {
    if (got.rows() != want.rows() || got.cols() != want.cols()) {
        why = "size " + std::to_string(got.rows()) + "x" + std::to_string(got.cols());
        return false;
    }
    auto w = equal_up_to_right_unitary(got, want);
    if (!w) {
        why = "ranges differ";
        return false;
    }
    if (!w->exact) {
        why = "no exact unitary witness";
        return false;
    }
    return true;
}

// Product of elementary Blaschke-Potapov factors with random directions.
RatMat random_square_inner(Rng& g, std::size_t s, int degree) {
    RatMat theta = RatMat::identity(s);
    for (int k = 0; k < degree; ++k) {
        QMat v(s, 1);
        bool nonzero = false;
        while (!nonzero) {
            for (std::size_t i = 0; i < s; ++i) v(i, 0) = GaussianRational(g.integer(-2, 2), g.integer(-1, 1));
            for (std::size_t i = 0; i < s; ++i) nonzero = nonzero || !v(i, 0).is_zero();
        }
        theta = theta * BPFactor{g.disk_point(), v}.matrix();
    }
    return theta;
}


bool c1(std::ostringstream& os) {
    KernelResult k = kernel_rational(HankelSymbol(RatMat{{zbar(), zbar()}}));
    std::string why;
    bool ok = exact_match(k.theta, MatrixInner::from_explicit(half_matrix(zf())), why);
    os << "kernel " << k.theta.describe() << (ok ? ", exact unitary witness" : ", " + why);
    return ok;
}

bool c2(std::ostringstream& os, std::uint64_t seed) {
    Rng g(seed + 2);
    int good = 0;
    for (int t = 0; t < 5; ++t) {
        GaussianRational a = g.disk_point();
        GaussianRational b1 = g.distinct_disk_point({}), b2 = g.distinct_disk_point({b1});
        RationalFunction th = blaschke_factor(a), p1 = blaschke_factor(b1), p2 = blaschke_factor(b2);
        if (t % 2 == 1) p1 = p1 * zf();
        RatMat symbol{{circle_adjoint(th * p1), circle_adjoint(th * p2)}};
        KernelResult k = kernel_rational(HankelSymbol(symbol));
        RatMat closed = RatMat::diagonal({p1, p2}) * half_matrix(th);
        std::string why;
        if (exact_match(k.theta, MatrixInner::from_explicit(closed), why)) ++good;
        else os << "pair " << t << ": " << why << "; ";
    }
    os << good << "/5 pairs match the closed form exactly";
    return good == 5;
}

bool c3(std::ostringstream& os, std::uint64_t seed) {
    Rng g(seed + 3);
    int good = 0;
    for (int t = 0; t < 10; ++t) {
        const std::size_t s = static_cast<std::size_t>(1 + t % 3);
        const int degree = static_cast<int>(g.integer(1, 4));
        RatMat theta = random_square_inner(g, s, degree);
        if (!is_inner(theta).inner) throw InvariantViolation("generated matrix is not inner");
        KernelResult k = kernel_rational(HankelSymbol(circle_adjoint(theta)));
        std::string why;
        if (exact_match(k.theta, MatrixInner::from_explicit(theta), why)) ++good;
        else os << "case " << t << " (" << s << "x" << s << ", degree " << degree << "): " << why << "; ";
    }
    os << good << "/10 round trips exact";
    return good == 10;
}

// diag(atoms..., conj(b_k)...) mixed on both sides by nonsingular rational matrices.
bool c4(std::ostringstream& os, std::uint64_t seed) {
    Rng g(seed + 4);
    int good = 0, empty_checked = 0;
    for (int t = 0; t < 20; ++t) {
        const std::size_t m = static_cast<std::size_t>(g.integer(1, 3));
        const int r = static_cast<int>(g.integer(0, static_cast<long>(m)));
        NSpanMatrix seed_sym(m, m);
        for (std::size_t j = 0; j < m; ++j) {
            if (static_cast<int>(j) < r) seed_sym(j, j) = NSpanEntry(Atom{"s" + std::to_string(t) + "_" + std::to_string(j)});
            else seed_sym(j, j) = NSpanEntry(circle_adjoint(blaschke_factor(g.disk_point())));
        }
        NSpanMatrix phi = mul_left(g.nonsingular(m), mul_right(seed_sym, g.nonsingular(m)));
        MatrixInner theta = kernel_symbolic(phi);
        const bool size_ok = theta.cols() == m - static_cast<std::size_t>(r);
        const bool empty_ok = (theta.cols() == 0) == (r == static_cast<int>(m));
        if (r == static_cast<int>(m)) ++empty_checked;
        if (size_ok && empty_ok) ++good;
        else os << "case " << t << ": m " << m << ", r " << r << ", columns " << theta.cols() << "; ";
    }
    os << good << "/20 sizes equal m - r (" << empty_checked << " with r = m)";
    return good == 20;
}

NSpanMatrix random_nspan(Rng& g, std::size_t n, std::size_t m, int atoms, const std::string& tag) {
    NSpanMatrix phi(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            NSpanEntry e(g.analytic() * (g.integer(0, 1) ? zbar() : c(1)));
            for (int a = 0; a < atoms; ++a)
                if (g.integer(0, 2) == 0) e += NSpanEntry(Atom{tag + std::to_string(a)}, g.analytic());
            phi(i, j) = e;
        }
    return phi;
}

bool c5(std::ostringstream& os, std::uint64_t seed) {
    Rng g(seed + 5);
    int good = 0;
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = static_cast<std::size_t>(g.integer(1, 3)), l = static_cast<std::size_t>(g.integer(1, 3));
        NSpanMatrix phi = random_nspan(g, n, l, static_cast<int>(g.integer(1, 3)), "p" + std::to_string(t) + "_");
        const int ind = independency(phi);
        const int right = independency(mul_right(phi, g.nonsingular(l)));
        const int left = independency(mul_left(g.nonsingular(n), phi));
        // s >= l: phi has s columns, A is s x l of rank l
        const std::size_t s = l + static_cast<std::size_t>(g.integer(0, 2));
        NSpanMatrix wide = random_nspan(g, n, s, static_cast<int>(g.integer(1, 3)), "w" + std::to_string(t) + "_");
        const int before = independency(wide);
        const int after = independency(mul_right(wide, g.full_rank(s, l)));
        const long lo = before - static_cast<long>(s - l);
        const bool ok = right == ind && left == ind && lo <= after && after <= before;
        if (ok) ++good;
        else os << "case " << t << ": ind " << ind << ", right " << right << ", left " << left << ", sandwich " << lo << " <= " << after << " <= " << before << "; ";
    }
    os << good << "/20 pairs preserve independency and satisfy the sandwich";
    return good == 20;
}

bool c6(std::ostringstream& os) {
    RationalFunction t1 = blaschke_factor(GaussianRational(Rational(1, 2))), t2 = zf().pow(2),
                     t3 = blaschke_factor(GaussianRational(Rational(-1, 3))), t4 = zf() * blaschke_factor(GaussianRational(Rational(1, 4)));
    Atom a1{"a1"}, a2{"a2"};
    NSpanMatrix phi{{NSpanEntry(a1), 0, 0}, {0, NSpanEntry(circle_adjoint(t1)), 0}, {0, 0, NSpanEntry(circle_adjoint(t2))}};
    NSpanMatrix psi{{NSpanEntry(a2), NSpanEntry(a2), 0}, {0, NSpanEntry(circle_adjoint(t3)), 0}, {0, 0, NSpanEntry(circle_adjoint(t4))}};
    MatrixInner theta1 = MatrixInner::from_explicit(RatMat{{c(0), c(0)}, {t1, c(0)}, {c(0), t2}});
    MatrixInner theta2 = MatrixInner::from_scaled_columns(RatMat{{-t3, c(0)}, {t3, c(0)}, {c(0), t4}}, {Rational(2), Rational(1)});
    // lcm of z^2 and z B_{1/4} is z^2 B_{1/4}
    MatrixInner lcm_expected = MatrixInner::from_explicit(RatMat{{c(0)}, {c(0)}, {zf().pow(2) * blaschke_factor(GaussianRational(Rational(1, 4)))}});

    const int ip = independency(phi), iq = independency(psi);
    MatrixInner k1 = kernel_symbolic(phi), k2 = kernel_symbolic(psi);
    const bool kernels = equal_up_to_right_unitary(k1, theta1).has_value() && equal_up_to_right_unitary(k2, theta2).has_value() &&
                         k1.cols() == 2 && k2.cols() == 2;
    LcmResult via_symbols = lcm_from_symbols({phi, psi});
    LcmResult direct = lcm_inner({theta1, theta2});
    std::string why1, why2;
    const bool lcm_ok = exact_match(via_symbols.inner, lcm_expected, why1) && exact_match(direct.inner, lcm_expected, why2);
    const int omega = via_symbols.trace.stacked_independency.value_or(-1);
    GcdResult g = gcd_inner({theta1, theta2});
    size_bound_audit(via_symbols.trace);
    size_bound_audit(g.trace);
    os << "ind " << ip << ", " << iq << "; kernels " << (kernels ? "as printed" : "differ") << "; stacked ind " << omega << "; lcm "
       << (lcm_ok ? "(0,0,z^2 B_1/4) on both paths" : why1 + "/" + why2) << "; gcd " << g.inner.rows() << "x" << g.inner.cols();
    return ip == 1 && iq == 1 && kernels && omega == 2 && lcm_ok && g.inner.rows() == 3 && g.inner.cols() == 3;
}

bool c7(std::ostringstream& os) {
    auto zp = [](int k) { return zf().pow(k); };
    RatMat f{{c(1), c(1), zp(1), zp(2)}, {c(1), zp(1), zp(2), zp(3)}, {c(1), c(0), c(0), c(0)}};
    InnerOuterResult io = inner_outer(f);
    const int rank = generic_rank(f);
    const bool reassembly = io.theta.generator() * io.core == f;
    os << "generic rank " << rank << ", inner " << io.theta.rows() << "x" << io.theta.cols() << ", outer " << io.core.rows() << "x"
       << io.core.cols() << ", exact reassembly " << (reassembly ? "yes" : "no");
    return rank == 2 && io.theta.rows() == 3 && io.theta.cols() == 2 && io.core.rows() == 2 && io.core.cols() == 4 && reassembly &&
           is_outer(io.core);
}

bool c8(std::ostringstream& os, std::uint64_t seed) {
    std::vector<RatMat> corpus{RatMat{{zbar(), zbar()}}, RatMat{{zbar().pow(2), zbar()}}, RatMat{{zbar().pow(2), c(0)}, {c(1), zbar()}},
                               RatMat{{circle_adjoint(blaschke_factor(GaussianRational(Rational(1, 2)))) + zf(), c(0)}}};
    Rng g(seed + 8);
    for (int t = 0; t < 4; ++t) {
        RatMat theta = random_square_inner(g, static_cast<std::size_t>(1 + t % 2), static_cast<int>(g.integer(1, 3)));
        corpus.push_back(circle_adjoint(theta));
    }
    int checked = 0, agree = 0;
    for (const auto& m : corpus) {
        HankelSymbol phi(m);
        KernelResult k = kernel_rational(phi);
        for (int d = 0; d <= 6; ++d) {
            ++checked;
            const int svd = finite_section_kernel_dim(phi, d), predicted = k.polynomial_section_dim(d);
            if (svd == predicted) ++agree;
            else os << "symbol " << m.rows() << "x" << m.cols() << " d " << d << ": svd " << svd << " vs " << predicted << "; ";
        }
    }
    os << agree << "/" << checked << " (symbol, d) pairs agree";
    return agree == checked;
}

bool c9(std::ostringstream& os) {
    CounterexampleReport rep = iz_counterexample_check(5, 7);
    int strict = 0;
    for (const auto& line : rep.lines)
        if (line.find("kernel defect 1, I_z defect 2") != std::string::npos && line.find("strictly yes") != std::string::npos) ++strict;
    os << strict << "/5 sampled symbols: kernel strictly contains I_z H^2, defects 1 vs 2";
    return rep.holds && strict == 5;
}

bool c10(std::ostringstream& os, std::uint64_t seed) {
    ModelSubspace m = sstar_invariant_from_generators({RatMat{{c(1)}, {zf()}}});
    ModelSubspace ex = sstar_invariant_from_generators({RatMat{{c(1)}, {c(1)}}});
    std::string why;
    const bool ex_ok = exact_match(ex.inner, MatrixInner::from_explicit(half_matrix(zf())), why);
    Rng g(seed + 10);
    int non_cyclic = 0;
    for (int t = 0; t < 20; ++t) {
        RatMat f(static_cast<std::size_t>(g.integer(1, 3)), 1);
        for (std::size_t i = 0; i < f.rows(); ++i) f(i, 0) = g.analytic();
        if (!cyclic_test(f)) ++non_cyclic;
    }
    os << "dim for (1, z): " << m.dimension_text() << "; single generator " << (ex_ok ? "reproduces the two-point inner" : why)
       << "; " << non_cyclic << "/20 rational vectors non-cyclic";
    return m.dim == 2 && ex_ok && non_cyclic == 20;
}

const char* kTitles[] = {"",
                         "two-point kernel identity",
                         "two-column closed form",
                         "adjoint kernel round trip",
                         "kernel size law",
                         "independency preservation",
                         "closing lattice example",
                         "inner-outer sizing",
                         "finite-section agreement",
                         "I_z negative result",
                         "backward-shift machinery"};

} // namespace

CriterionResult run_criterion(int number, std::uint64_t seed) {
    CriterionResult r;
    r.number = number;
    if (number < 1 || number > kCriterionCount) {
        r.title = "unknown";
        r.detail = "no criterion " + std::to_string(number);
        return r;
    }
    r.title = kTitles[number];
    std::ostringstream os;
    try {
        switch (number) {
        case 1: r.pass = c1(os); break;
        case 2: r.pass = c2(os, seed); break;
        case 3: r.pass = c3(os, seed); break;
        case 4: r.pass = c4(os, seed); break;
        case 5: r.pass = c5(os, seed); break;
        case 6: r.pass = c6(os); break;
        case 7: r.pass = c7(os); break;
        case 8: r.pass = c8(os, seed); break;
        case 9: r.pass = c9(os); break;
        default: r.pass = c10(os, seed); break;
        }
    } catch (const std::exception& e) {
        r.pass = false;
        os << "exception: " << e.what();
    }
    r.detail = os.str();
    return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (int k = 1; k <= kCriterionCount; ++k) out.push_back(run_criterion(k, seed));
    return out;
}

std::string format_criterion(const CriterionResult& r) {
    return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.number) + " " + r.title + ": " + r.detail;
}

} // namespace bhk::verify
