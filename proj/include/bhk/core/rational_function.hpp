#pragma once

#include "bhk/core/polynomial.hpp"

namespace bhk {

/// num/den with gcd(num, den) = 1 and den monic. Zero is 0/1.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(long c) : num_(c), den_(1) {}
    RationalFunction(const GaussianRational& c) : num_(c), den_(1) {}
    RationalFunction(const Polynomial& p) : num_(p), den_(1) {}
    RationalFunction(const Polynomial& num, const Polynomial& den);

    static RationalFunction z() { return Polynomial::z(); }
    /// z^k for any integer k.
    static RationalFunction z_pow(int k);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return is_polynomial() && num_.is_constant(); }
    /// Constant value; throws if not constant.
    GaussianRational constant_value() const;

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    RationalFunction operator-() const;
    RationalFunction inverse() const;
    RationalFunction pow(int k) const;

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    /// Exact value; throws std::domain_error at a pole.
    GaussianRational operator()(const GaussianRational& x) const;
    std::complex<double> operator()(std::complex<double> x) const;

    std::string str() const;

private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& r);

} // namespace bhk
