#pragma once

#include "bhk/core/rational_function.hpp"

#include <complex>
#include <map>
#include <vector>

namespace bhk {

/// Complex number of modulus one. Exact when it is a Gaussian rational.
class UnimodularConstant {
public:
    UnimodularConstant() = default;
    /// Throws std::invalid_argument unless |value| = 1 exactly.
    explicit UnimodularConstant(const GaussianRational& value);
    /// Numeric-only constant (for example a square-root phase).
    static UnimodularConstant numeric(std::complex<double> shadow);

    bool exact() const { return exact_; }
    const GaussianRational& value() const;
    std::complex<double> shadow() const { return shadow_; }

    UnimodularConstant operator*(const UnimodularConstant& o) const;
    UnimodularConstant conj() const;

private:
    GaussianRational value_{1};
    std::complex<double> shadow_{1.0, 0.0};
    bool exact_ = true;
};

/// B_a(z) = (z - a)/(1 - conj(a) z), so B_0 = z.
RationalFunction blaschke_factor(const GaussianRational& alpha);

/// Finite Blaschke product c * prod B_a^{m_a}.
class BlaschkeProduct {
public:
    BlaschkeProduct() = default;
    /// Throws DomainError when some |a| >= 1, naming the zero.
    explicit BlaschkeProduct(std::map<GaussianRational, int> zeros, UnimodularConstant c = {});
    static BlaschkeProduct factor(const GaussianRational& alpha, int multiplicity = 1);

    const std::map<GaussianRational, int>& zeros() const { return zeros_; }
    const UnimodularConstant& constant() const { return c_; }
    int degree() const;
    /// prod (z - a)^{m_a}, monic.
    Polynomial zero_polynomial() const;

    BlaschkeProduct operator*(const BlaschkeProduct& o) const;
    /// Zero-multiset containment; constants are ignored.
    bool divides(const BlaschkeProduct& o) const;
    BlaschkeProduct with_constant(UnimodularConstant c) const { return BlaschkeProduct(zeros_, c); }

    /// Exact rational form; throws DomainError for a numeric-only constant.
    RationalFunction to_rational() const;
    std::complex<double> operator()(std::complex<double> z) const;

    /// Same zeros and same constant.
    friend bool operator==(const BlaschkeProduct& a, const BlaschkeProduct& b);

    std::string str() const;

private:
    std::map<GaussianRational, int> zeros_;
    UnimodularConstant c_;
};

struct ScalarInnerOuter {
    BlaschkeProduct inner;
    RationalFunction outer;
};

/// h = inner * outer for h analytic on the closed disk. Throws DomainError on
/// circle zeros or zeros in the disk that are not Gaussian rationals.
ScalarInnerOuter scalar_inner_outer(const RationalFunction& h);

struct ScalarGcdLcm {
    BlaschkeProduct gcd;
    BlaschkeProduct lcm;
};

/// Multiset intersection and union of zeros; constants are set to 1.
ScalarGcdLcm scalar_gcd_lcm(const std::vector<BlaschkeProduct>& bs);

} // namespace bhk
