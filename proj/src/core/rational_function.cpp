#include "bhk/core/rational_function.hpp"

#include <ostream>
#include <stdexcept>

namespace bhk {

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
}

RationalFunction RationalFunction::z_pow(int k) {
    if (k >= 0) return Polynomial::monomial(k);
    return {Polynomial(1), Polynomial::monomial(-k)};
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    if (den_.degree() > 0) {
        Polynomial g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.exact_div(g);
            den_ = den_.exact_div(g);
        }
    }
    if (!den_.leading().is_one()) {
        GaussianRational inv = den_.leading().inverse();
        num_ *= inv;
        den_ *= inv;
    }
}

GaussianRational RationalFunction::constant_value() const {
    if (!is_constant()) throw std::domain_error("rational function is not constant: " + str());
    return num_.coeff(0);
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (is_zero() || o.is_zero()) return *this = RationalFunction();
    // cross-cancel before multiplying to keep the gcd work small
    Polynomial g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    Polynomial n1 = g1.degree() > 0 ? num_.exact_div(g1) : num_;
    Polynomial d2 = g1.degree() > 0 ? o.den_.exact_div(g1) : o.den_;
    Polynomial n2 = g2.degree() > 0 ? o.num_.exact_div(g2) : o.num_;
    Polynomial d1 = g2.degree() > 0 ? den_.exact_div(g2) : den_;
    num_ = n1 * n2;
    den_ = d1 * d2;
    if (!den_.leading().is_one()) {
        GaussianRational inv = den_.leading().inverse();
        num_ *= inv;
        den_ *= inv;
    }
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    return {den_, num_};
}

RationalFunction RationalFunction::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    return {num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k))};
}

GaussianRational RationalFunction::operator()(const GaussianRational& x) const {
    GaussianRational d = den_(x);
    if (d.is_zero()) throw std::domain_error("evaluation at a pole");
    return num_(x) / d;
}

std::complex<double> RationalFunction::operator()(std::complex<double> x) const { return num_(x) / den_(x); }

std::string RationalFunction::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.str(); }

} // namespace bhk
