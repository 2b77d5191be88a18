#pragma once

#include "bhk/core/gaussian_rational.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace bhk {

/// Dense univariate polynomial over the Gaussian rationals, lowest degree first.
/// The zero polynomial has an empty coefficient list and degree kZeroDegree.
class Polynomial {
public:
    static constexpr int kZeroDegree = -1;

    Polynomial() = default;
    Polynomial(long c);
    Polynomial(const GaussianRational& c);
    explicit Polynomial(std::vector<GaussianRational> coeffs);

    static Polynomial monomial(int k, const GaussianRational& c = 1);
    static Polynomial z() { return monomial(1); }
    /// prod (z - r)
    static Polynomial from_roots(const std::vector<GaussianRational>& roots);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    /// Index of the lowest nonzero coefficient; 0 for the zero polynomial.
    int valuation() const;

    const std::vector<GaussianRational>& coeffs() const { return c_; }
    /// Coefficient of z^k; zero outside the stored range.
    GaussianRational coeff(int k) const;
    const GaussianRational& leading() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const GaussianRational& s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const GaussianRational& s) { return a *= s; }
    friend Polynomial operator*(const GaussianRational& s, Polynomial a) { return a *= s; }
    Polynomial operator-() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Euclidean division a = q b + r, deg r < deg b. Throws on b = 0.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
    /// Quotient of an exact division; throws InvariantViolation when b does not divide.
    Polynomial exact_div(const Polynomial& b) const;
    bool divisible_by(const Polynomial& b) const;

    Polynomial monic() const;
    Polynomial derivative() const;
    Polynomial pow(unsigned k) const;
    /// z^k p
    Polynomial shifted(int k) const;
    /// Coefficients conjugated, variable untouched.
    Polynomial conj_coeffs() const;
    /// z^n conj(p)(1/z) with n = deg p: the reflected polynomial.
    Polynomial reflected() const;
    /// z^n p(1/z) for a given n >= deg p.
    Polynomial reversed(int n) const;
    /// Drop coefficients of z^k for k >= n.
    Polynomial truncated(int n) const;

    GaussianRational operator()(const GaussianRational& x) const;
    std::complex<double> operator()(std::complex<double> x) const;

    std::string str(const std::string& var = "z") const;

private:
    void trim();
    std::vector<GaussianRational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Monic lcm of nonzero polynomials.
Polynomial lcm(const Polynomial& a, const Polynomial& b);
/// Returns (g, s, t) with s a + t b = g monic.
struct ExtendedGcd {
    Polynomial g, s, t;
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);

/// Squarefree decomposition: p = lc * prod f_i^{m_i} with f_i monic, squarefree, pairwise coprime.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

} // namespace bhk
