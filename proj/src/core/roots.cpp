#include "bhk/core/roots.hpp"

#include "bhk/core/errors.hpp"

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bhk {

namespace {

namespace mp = boost::multiprecision;
using Real = mp::number<mp::mpfr_float_backend<110>, mp::et_off>;

struct Cx {
    Real re, im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Real abs2(const Cx& a) { return a.re * a.re + a.im * a.im; }
Cx operator/(const Cx& a, const Cx& b) {
    Real n = abs2(b);
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Rational to_rational(const Real& r) {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), r.backend().data());
    return q;
}

Cx to_cx(const GaussianRational& g) { return {to_real(g.re()), to_real(g.im())}; }

std::complex<double> to_cd(const Cx& c) {
    return {c.re.convert_to<double>(), c.im.convert_to<double>()};
}

// Continued-fraction convergent of q within tol (relative to max(1, |q|)).
Rational simplest_near(const Rational& q, const Rational& tol) {
    Rational scale = abs(q) > 1 ? Rational(abs(q)) : Rational(1);
    Rational bound = tol * scale;
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Rational x = q;
    for (int step = 0; step < 200; ++step) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        Rational conv(h1, k1);
        conv.canonicalize();
        if (abs(conv - q) <= bound) return conv;
        Rational frac = x - Rational(a);
        if (sgn(frac) == 0) return conv;
        x = 1 / frac;
    }
    return q;
}

Cx eval(const std::vector<Cx>& c, const Cx& x) {
    Cx acc{Real(0), Real(0)};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Aberth iteration on a squarefree polynomial, seeded by companion eigenvalues.
std::vector<Cx> squarefree_roots(const Polynomial& s) {
    const int n = s.degree();
    std::vector<Cx> coeffs;
    for (const auto& c : s.coeffs()) coeffs.push_back(to_cx(c));
    if (n == 1) return {Cx{Real(0), Real(0)} - coeffs[0] / coeffs[1]};

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    std::complex<double> lead = s.leading().to_complex();
    for (int k = 0; k < n; ++k) comp(k, n - 1) = -s.coeff(k).to_complex() / lead;
    for (int k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Cx> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        auto v = es.eigenvalues()(k);
        // nudge so that coincident double estimates separate
        v += std::complex<double>(1e-12 * (k + 1), 1e-12 * (k + 2));
        z[static_cast<std::size_t>(k)] = {Real(v.real()), Real(v.imag())};
    }

    std::vector<Cx> deriv;
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        deriv.push_back(coeffs[k] * Cx{Real(static_cast<long>(k)), Real(0)});

    const Real tol = Real("1e-95");
    for (int iter = 0; iter < 400; ++iter) {
        Real worst = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            Cx pv = eval(coeffs, z[k]);
            if (abs2(pv) == 0) continue;
            Cx ratio = pv / eval(deriv, z[k]);
            Cx sum{Real(0), Real(0)};
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) sum = sum + Cx{Real(1), Real(0)} / (z[k] - z[j]);
            Cx w = ratio / (Cx{Real(1), Real(0)} - ratio * sum);
            z[k] = z[k] - w;
            Real size = abs2(z[k]) > 1 ? abs2(z[k]) : Real(1);
            Real rel = abs2(w) / size;
            if (rel > worst) worst = rel;
        }
        if (worst < tol * tol) break;
    }
    return z;
}

struct PreciseRoot {
    Cx value;
    int multiplicity;
};

std::vector<PreciseRoot> precise_roots(const Polynomial& p) {
    std::vector<PreciseRoot> out;
    for (const auto& [factor, mult] : squarefree_decomposition(p))
        for (const auto& r : squarefree_roots(factor)) out.push_back({r, mult});
    return out;
}

enum class Place { Inside, Circle, Outside };

Place classify(const Cx& r) {
    Real m2 = abs2(r);
    const Real lo = Real(1 - kDiskMargin) * Real(1 - kDiskMargin);
    const Real hi = Real(1 + kDiskMargin) * Real(1 + kDiskMargin);
    if (m2 < lo) return Place::Inside;
    if (m2 > hi) return Place::Outside;
    return Place::Circle;
}

[[noreturn]] void throw_circle(const Polynomial& p, const Cx& r) {
    std::ostringstream os;
    os << "polynomial " << p.str() << " has a root on the unit circle near " << to_cd(r);
    throw DomainError(os.str());
}

// Monic polynomial with the given roots, coefficients rounded to nearby rationals.
Polynomial rationalized_product(const std::vector<Cx>& roots) {
    std::vector<Cx> c{Cx{Real(1), Real(0)}};
    for (const auto& r : roots) {
        std::vector<Cx> next(c.size() + 1, Cx{Real(0), Real(0)});
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] = next[k + 1] + c[k];
            next[k] = next[k] - c[k] * r;
        }
        c = std::move(next);
    }
    const Rational tol("1/1000000000000000000000000000000000000000000000000000000000000");
    std::vector<GaussianRational> q;
    for (const auto& x : c) q.emplace_back(simplest_near(to_rational(x.re), tol), simplest_near(to_rational(x.im), tol));
    return Polynomial(std::move(q));
}

Polynomial real_sturm_rem(const Polynomial& a, const Polynomial& b) { return -Polynomial::divmod(a, b).second; }

int sign_of(const Rational& q) { return sgn(q); }

int sign_changes(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// Number of distinct real roots of a real polynomial.
int real_root_count(const Polynomial& q) {
    if (q.degree() <= 0) return 0;
    std::vector<Polynomial> seq{q, q.derivative()};
    while (!seq.back().is_zero()) {
        Polynomial r = real_sturm_rem(seq[seq.size() - 2], seq.back());
        if (r.is_zero()) break;
        seq.push_back(std::move(r));
    }
    std::vector<int> at_neg, at_pos;
    for (const auto& p : seq) {
        int s = sign_of(p.leading().re());
        at_pos.push_back(s);
        at_neg.push_back(p.degree() % 2 == 0 ? s : -s);
    }
    return sign_changes(at_neg) - sign_changes(at_pos);
}

} // namespace

std::vector<RootEstimate> locate_roots(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    std::vector<RootEstimate> out;
    for (const auto& r : precise_roots(p)) out.push_back({to_cd(r.value), r.multiplicity});
    return out;
}

bool roots_in_open_disk(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("root test on the zero polynomial");
    Polynomial q = p;
    while (q.degree() > 0) {
        GaussianRational a0 = q.coeff(0), an = q.leading();
        if (an.norm2() <= a0.norm2()) return false;
        q = (an.conj() * q - a0 * q.reflected()).shifted(-1);
    }
    return true;
}

bool roots_outside_closed_disk(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("root test on the zero polynomial");
    if (p.coeff(0).is_zero()) return false;
    return roots_in_open_disk(p.reversed(p.degree()));
}

std::optional<std::complex<double>> circle_root(const Polynomial& p) {
    if (p.degree() <= 0) return std::nullopt;
    // a circle root of p is also a root of p#
    Polynomial g = gcd(p, p.reflected());
    if (g.degree() <= 0) return std::nullopt;
    for (const auto& r : precise_roots(g))
        if (classify(r.value) == Place::Circle) return to_cd(r.value);
    return std::nullopt;
}

std::optional<DiskSplit> try_split_disk(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("disk split of the zero polynomial");
    Polynomial inside(1);
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        std::vector<Cx> roots = squarefree_roots(factor);
        std::vector<Cx> in;
        for (const auto& r : roots) {
            Place where = classify(r);
            if (where == Place::Circle) throw_circle(p, r);
            if (where == Place::Inside) in.push_back(r);
        }
        Polynomial part;
        if (in.empty())
            part = Polynomial(1);
        else if (in.size() == roots.size())
            part = factor;
        else {
            part = rationalized_product(in);
            if (!factor.divisible_by(part)) return std::nullopt;
        }
        inside *= part.pow(static_cast<unsigned>(mult));
    }
    Polynomial outside = p.exact_div(inside);
    if (!roots_in_open_disk(inside) || !roots_outside_closed_disk(outside))
        throw InvariantViolation("disk split certificate failed for " + p.str());
    return DiskSplit{inside, outside};
}

DiskSplit split_disk(const Polynomial& p) {
    auto s = try_split_disk(p);
    if (!s) throw DomainError("the disk factor of " + p.str() + " is not defined over the Gaussian rationals");
    return *s;
}

int count_roots_in_open_disk(const Polynomial& p) {
    int count = 0;
    for (const auto& r : precise_roots(p)) {
        Place where = classify(r.value);
        if (where == Place::Circle) throw_circle(p, r.value);
        if (where == Place::Inside) count += r.multiplicity;
    }
    return count;
}

std::vector<std::pair<GaussianRational, int>> gaussian_rational_roots(const Polynomial& p) {
    std::vector<std::pair<GaussianRational, int>> out;
    if (p.degree() <= 0) return out;
    const Rational tol("1/1000000000000000000000000000000000000000000000000000000000000");
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        for (const auto& r : squarefree_roots(factor)) {
            GaussianRational cand(simplest_near(to_rational(r.re), tol), simplest_near(to_rational(r.im), tol));
            if (factor(cand).is_zero()) out.emplace_back(cand, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

bool positive_on_circle(const RationalFunction& s) {
    if (s.is_zero()) return false;
    const Polynomial& a = s.num();
    const Polynomial& b = s.den();
    // s |b|^2 = a b# z^{-deg b} on the circle
    Polynomial l = a * b.reflected();
    const int shift = b.degree();
    const int top = l.degree() - shift;
    const int big_n = std::max(top, shift);
    auto c = [&](int k) { return l.coeff(k + shift); };
    for (int k = 0; k <= big_n; ++k)
        if (c(-k) != c(k).conj()) return false;
    // z = (1 + i t)/(1 - i t) maps the real line onto the circle minus {-1}
    Polynomial plus({GaussianRational(1), GaussianRational(0, 1)});
    Polynomial minus({GaussianRational(1), GaussianRational(0, -1)});
    std::vector<Polynomial> pp(static_cast<std::size_t>(2 * big_n) + 1), mm(pp.size());
    pp[0] = mm[0] = Polynomial(1);
    for (std::size_t k = 1; k < pp.size(); ++k) {
        pp[k] = pp[k - 1] * plus;
        mm[k] = mm[k - 1] * minus;
    }
    Polynomial q;
    GaussianRational at_minus_one;
    for (int k = -big_n; k <= big_n; ++k) {
        GaussianRational ck = c(k);
        if (ck.is_zero()) continue;
        q += ck * (pp[static_cast<std::size_t>(big_n + k)] * mm[static_cast<std::size_t>(big_n - k)]);
        at_minus_one += (k % 2 == 0) ? ck : -ck;
    }
    for (const auto& x : q.coeffs())
        if (!x.is_real()) throw InvariantViolation("Cayley image of a Hermitian function is not real");
    if (!at_minus_one.is_real() || sgn(at_minus_one.re()) <= 0) return false;
    if (q.is_zero() || sgn(q.coeff(0).re()) <= 0) return false;
    return real_root_count(q) == 0;
}

ScalarSpectralFactor::ScalarSpectralFactor(const RationalFunction& s) {
    for (const auto& r : precise_roots(s.num()))
        if (classify(r.value) == Place::Outside)
            for (int k = 0; k < r.multiplicity; ++k) zeros_.push_back(to_cd(r.value));
    if (s.den().degree() > 0)
        for (const auto& r : precise_roots(s.den()))
            if (classify(r.value) == Place::Outside)
                for (int k = 0; k < r.multiplicity; ++k) poles_.push_back(to_cd(r.value));
    scale_ = 1.0;
    std::complex<double> at_one = (*this)(1.0);
    double target = std::sqrt(std::abs(s(std::complex<double>(1.0, 0.0))));
    double mag = target / std::abs(at_one);
    std::complex<double> at_zero = (*this)(0.0);
    scale_ = mag * std::conj(at_zero) / std::abs(at_zero);
    for (int k = 0; k < 7; ++k) {
        std::complex<double> zeta = std::polar(1.0, 0.9 * k + 0.3);
        double lhs = std::norm((*this)(zeta));
        double rhs = s(zeta).real();
        if (std::abs(lhs - rhs) > 1e-8 * std::max(1.0, std::abs(rhs)))
            throw InvariantViolation("scalar spectral factor does not reproduce " + s.str());
    }
}

std::complex<double> ScalarSpectralFactor::operator()(std::complex<double> z) const {
    std::complex<double> v = scale_;
    for (auto b : zeros_) v *= (z - b);
    for (auto g : poles_) v /= (z - g);
    return v;
}

} // namespace bhk
