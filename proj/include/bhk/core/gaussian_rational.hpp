#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace bhk {

using Rational = mpq_class;

/// Complex number a + b i with a, b exact rationals.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}
    GaussianRational(const Rational& re, const Rational& im = 0);

    /// Parses "3/4", "-2i", "1/2+1/3i", "i", "-1/5-i". Throws SchemaError.
    static GaussianRational parse(std::string_view text);
    /// Exact binary value of the doubles.
    static GaussianRational from_double(double re, double im = 0.0);
    static GaussianRational i() { return {0, 1}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |x|^2, exact.
    Rational norm2() const { return re_ * re_ + im_ * im_; }
    GaussianRational inverse() const;

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
    /// Lexicographic on (re, im); only used to key ordered containers.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
    std::string str() const;

private:
    Rational re_{0};
    Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& x);

} // namespace bhk
