#include "bhk/core/blaschke.hpp"

#include "bhk/core/circle.hpp"
#include "bhk/core/errors.hpp"
#include "bhk/core/roots.hpp"

#include <sstream>

namespace bhk {

UnimodularConstant::UnimodularConstant(const GaussianRational& value)
    : value_(value), shadow_(value.to_complex()), exact_(true) {
    if (value.norm2() != 1) throw std::invalid_argument("constant " + value.str() + " is not unimodular");
}

UnimodularConstant UnimodularConstant::numeric(std::complex<double> shadow) {
    UnimodularConstant c;
    c.exact_ = false;
    c.shadow_ = shadow / std::abs(shadow);
    return c;
}

const GaussianRational& UnimodularConstant::value() const {
    if (!exact_) throw DomainError("unimodular constant has no exact value");
    return value_;
}

UnimodularConstant UnimodularConstant::operator*(const UnimodularConstant& o) const {
    if (exact_ && o.exact_) return UnimodularConstant(value_ * o.value_);
    return numeric(shadow_ * o.shadow_);
}

UnimodularConstant UnimodularConstant::conj() const {
    if (exact_) return UnimodularConstant(value_.conj());
    return numeric(std::conj(shadow_));
}

RationalFunction blaschke_factor(const GaussianRational& alpha) {
    Polynomial num({-alpha, GaussianRational(1)});
    Polynomial den({GaussianRational(1), -alpha.conj()});
    return {num, den};
}

BlaschkeProduct::BlaschkeProduct(std::map<GaussianRational, int> zeros, UnimodularConstant c)
    : zeros_(std::move(zeros)), c_(c) {
    for (auto it = zeros_.begin(); it != zeros_.end();) {
        if (it->first.norm2() >= 1)
            throw DomainError("Blaschke zero " + it->first.str() + " is not inside the open unit disk");
        if (it->second < 0) throw std::invalid_argument("negative Blaschke multiplicity");
        if (it->second == 0)
            it = zeros_.erase(it);
        else
            ++it;
    }
}

BlaschkeProduct BlaschkeProduct::factor(const GaussianRational& alpha, int multiplicity) {
    return BlaschkeProduct({{alpha, multiplicity}});
}

int BlaschkeProduct::degree() const {
    int d = 0;
    for (const auto& [a, m] : zeros_) d += m;
    return d;
}

Polynomial BlaschkeProduct::zero_polynomial() const {
    Polynomial p(1);
    for (const auto& [a, m] : zeros_) p *= Polynomial({-a, GaussianRational(1)}).pow(static_cast<unsigned>(m));
    return p;
}

BlaschkeProduct BlaschkeProduct::operator*(const BlaschkeProduct& o) const {
    auto z = zeros_;
    for (const auto& [a, m] : o.zeros_) z[a] += m;
    return BlaschkeProduct(std::move(z), c_ * o.c_);
}

bool BlaschkeProduct::divides(const BlaschkeProduct& o) const {
    for (const auto& [a, m] : zeros_) {
        auto it = o.zeros_.find(a);
        if (it == o.zeros_.end() || it->second < m) return false;
    }
    return true;
}

RationalFunction BlaschkeProduct::to_rational() const {
    Polynomial p = zero_polynomial();
    return RationalFunction(p * c_.value(), p.reflected());
}

std::complex<double> BlaschkeProduct::operator()(std::complex<double> z) const {
    std::complex<double> v = c_.shadow();
    for (const auto& [a, m] : zeros_) {
        std::complex<double> al = a.to_complex();
        for (int k = 0; k < m; ++k) v *= (z - al) / (1.0 - std::conj(al) * z);
    }
    return v;
}

bool operator==(const BlaschkeProduct& a, const BlaschkeProduct& b) {
    if (a.zeros_ != b.zeros_ || a.c_.exact() != b.c_.exact()) return false;
    if (a.c_.exact()) return a.c_.value() == b.c_.value();
    return std::abs(a.c_.shadow() - b.c_.shadow()) < 1e-12;
}

std::string BlaschkeProduct::str() const {
    std::ostringstream os;
    if (c_.exact())
        os << c_.value().str();
    else
        os << c_.shadow();
    for (const auto& [a, m] : zeros_) {
        os << " * B[" << a.str() << "]";
        if (m > 1) os << "^" << m;
    }
    return os.str();
}

ScalarInnerOuter scalar_inner_outer(const RationalFunction& h) {
    if (h.is_zero()) throw std::invalid_argument("inner-outer factorization of zero");
    if (!is_analytic(h)) throw std::invalid_argument("function has poles in the closed disk: " + h.str());
    if (auto w = circle_root(h.num())) {
        std::ostringstream os;
        os << "zero on the unit circle near " << *w << " in " << h.str();
        throw DomainError(os.str());
    }
    DiskSplit s = split_disk(h.num());
    std::map<GaussianRational, int> zeros;
    int found = 0;
    for (const auto& [a, m] : gaussian_rational_roots(s.inside)) {
        zeros[a] = m;
        found += m;
    }
    if (found != s.inside.degree())
        throw DomainError("disk zeros of " + h.str() + " are not Gaussian rationals");
    BlaschkeProduct b(std::move(zeros));
    RationalFunction outer = h / b.to_rational();
    return {b, outer};
}

ScalarGcdLcm scalar_gcd_lcm(const std::vector<BlaschkeProduct>& bs) {
    if (bs.empty()) throw std::invalid_argument("gcd/lcm of an empty family");
    std::map<GaussianRational, int> g = bs.front().zeros(), l = bs.front().zeros();
    for (std::size_t k = 1; k < bs.size(); ++k) {
        const auto& z = bs[k].zeros();
        for (auto it = g.begin(); it != g.end();) {
            auto f = z.find(it->first);
            if (f == z.end()) {
                it = g.erase(it);
            } else {
                it->second = std::min(it->second, f->second);
                ++it;
            }
        }
        for (const auto& [a, m] : z) l[a] = std::max(l[a], m);
    }
    return {BlaschkeProduct(std::move(g)), BlaschkeProduct(std::move(l))};
}

} // namespace bhk
