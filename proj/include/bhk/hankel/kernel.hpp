#pragma once

#include "bhk/inner/inner_outer.hpp"

namespace bhk {

/// Rational matrix symbol of a block Hankel operator, with its pole split cached.
/// The antianalytic part is stored as B / p: p monic with every root in |z| < 1
/// (the lcm of the antianalytic denominators), B polynomial.
class HankelSymbol {
public:
    /// Throws DomainError on circle poles or when the disk part of a
    /// denominator is not defined over the Gaussian rationals.
    explicit HankelSymbol(RatMat phi);

    std::size_t rows() const { return phi_.rows(); }
    std::size_t cols() const { return phi_.cols(); }
    const RatMat& matrix() const { return phi_; }
    const RatMat& analytic() const { return analytic_; }
    const RatMat& antianalytic() const { return anti_; }
    const Polynomial& modulus() const { return p_; }
    const PolyMat& numerator() const { return b_; }
    /// p / p#: a scalar inner function b with b H^2 contained in the kernel.
    RationalFunction inner_multiple() const;

private:
    RatMat phi_, analytic_, anti_;
    Polynomial p_;
    PolyMat b_;
};

struct KernelResult {
    MatrixInner theta;            ///< square, ker H_phi = theta H^2
    PolyMat module_basis;         ///< G: polynomial members of the kernel = G C[z]^m
    int defect_dim = 0;           ///< dim of H^2 minus theta H^2
    std::vector<int> column_degrees;  ///< of G, column reduced

    /// Dimension of the kernel intersected with vector polynomials of degree <= d.
    int polynomial_section_dim(int d) const;
};

/// Throws InvariantViolation if a certificate fails.
KernelResult kernel_rational(const HankelSymbol& phi);

/// phi f analytic, exactly.
bool kernel_membership(const HankelSymbol& phi, const RatMat& f);

/// Numeric oracle: nullity of the truncated negative Fourier coefficient map on
/// vector polynomials of degree <= d (relative SVD tolerance 1e-8).
int finite_section_kernel_dim(const HankelSymbol& phi, int d);

/// Coefficients of H_phi f for the convention H_phi f = sum_j (phi f)^(-j-1) z^j,
/// j = 0..terms-1, one row per component.
std::vector<std::vector<GaussianRational>> hankel_apply(const HankelSymbol& phi, const RatMat& f, int terms);

/// H_phi(z f) = S* H_phi f on all monomial vectors of degree <= d.
bool intertwine_check(const HankelSymbol& phi, int d);

} // namespace bhk
