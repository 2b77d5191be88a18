#include "bhk/core/circle.hpp"

#include "bhk/core/errors.hpp"
#include "bhk/core/roots.hpp"

#include <sstream>

namespace bhk {

void require_no_circle_poles(const RationalFunction& r) {
    if (auto w = circle_root(r.den())) {
        std::ostringstream os;
        os << "pole on the unit circle near " << *w << " in " << r.str();
        throw DomainError(os.str());
    }
}

RationalFunction circle_adjoint(const RationalFunction& r) {
    require_no_circle_poles(r);
    if (r.is_zero()) return r;
    const int a = r.num().degree(), b = r.den().degree();
    Polynomial num = r.num().reflected(), den = r.den().reflected();
    if (b >= a)
        num = num.shifted(b - a);
    else
        den = den.shifted(a - b);
    return {num, den};
}

bool is_analytic(const RationalFunction& r) {
    return r.den().degree() == 0 || roots_outside_closed_disk(r.den());
}

PoleSplit pole_split(const RationalFunction& r) {
    if (r.is_zero() || r.den().degree() == 0) return {r, RationalFunction()};
    require_no_circle_poles(r);
    DiskSplit s = split_disk(r.den());
    if (s.inside.degree() == 0) return {r, RationalFunction()};
    if (s.outside.degree() == 0 && r.num().degree() < r.den().degree()) return {RationalFunction(), r};
    // antianalytic numerator: a = num * outside^{-1} mod inside
    ExtendedGcd eg = extended_gcd(s.outside, s.inside);
    if (eg.g.degree() != 0) throw InvariantViolation("disk factors are not coprime");
    Polynomial a = Polynomial::divmod(r.num() * eg.s, s.inside).second;
    RationalFunction anti(a, s.inside);
    return {r - anti, anti};
}

std::vector<GaussianRational> taylor_coefficients(const RationalFunction& r, int count) {
    std::vector<GaussianRational> out(static_cast<std::size_t>(std::max(count, 0)));
    const Polynomial& n = r.num();
    const Polynomial& d = r.den();
    GaussianRational d0 = d.coeff(0);
    if (d0.is_zero()) throw std::domain_error("Taylor expansion at a pole: " + r.str());
    GaussianRational inv = d0.inverse();
    for (int k = 0; k < count; ++k) {
        GaussianRational acc = n.coeff(k);
        for (int j = 1; j <= std::min(k, d.degree()); ++j) acc -= d.coeff(j) * out[static_cast<std::size_t>(k - j)];
        out[static_cast<std::size_t>(k)] = acc * inv;
    }
    return out;
}

namespace {

// Coefficients c_1..c_count of an antianalytic a/q = sum_{j>=1} c_j z^{-j}.
std::vector<GaussianRational> negative_coefficients(const RationalFunction& anti, int count) {
    if (anti.is_zero() || count <= 0) return std::vector<GaussianRational>(static_cast<std::size_t>(std::max(count, 0)));
    const int d = anti.den().degree();
    // in w = 1/z: a(1/w)/q(1/w) = w * rev_{d-1}(a)(w) / rev_d(q)(w)
    RationalFunction in_w(anti.num().reversed(d - 1), anti.den().reversed(d));
    return taylor_coefficients(in_w, count);
}

} // namespace

std::vector<GaussianRational> fourier_coefficients(const RationalFunction& r, int lo, int hi) {
    std::vector<GaussianRational> out;
    if (hi < lo) return out;
    PoleSplit s = pole_split(r);
    std::vector<GaussianRational> pos = hi >= 0 ? taylor_coefficients(s.analytic, hi + 1) : std::vector<GaussianRational>();
    std::vector<GaussianRational> neg = lo < 0 ? negative_coefficients(s.antianalytic, -lo) : std::vector<GaussianRational>();
    for (int k = lo; k <= hi; ++k) out.push_back(k >= 0 ? pos[static_cast<std::size_t>(k)] : neg[static_cast<std::size_t>(-k - 1)]);
    return out;
}

GaussianRational fourier_coefficient(const RationalFunction& r, int k) { return fourier_coefficients(r, k, k).front(); }

} // namespace bhk
