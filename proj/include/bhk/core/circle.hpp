#pragma once

#include "bhk/core/rational_function.hpp"

#include <vector>

namespace bhk {

/// Throws DomainError naming the pole when r has a pole on |z| = 1.
void require_no_circle_poles(const RationalFunction& r);

/// r*(z) = conj(r)(1/z); agrees with the pointwise conjugate on the circle.
RationalFunction circle_adjoint(const RationalFunction& r);

/// True when every pole lies in |z| > 1 (exact).
bool is_analytic(const RationalFunction& r);

struct PoleSplit {
    RationalFunction analytic;      ///< poles in |z| > 1
    RationalFunction antianalytic;  ///< poles in |z| < 1, zero at infinity
};

/// Unique decomposition r = analytic + antianalytic. Throws DomainError on circle poles.
PoleSplit pole_split(const RationalFunction& r);

/// Taylor coefficients 0..count-1 of r at the origin; requires r(0) finite.
std::vector<GaussianRational> taylor_coefficients(const RationalFunction& r, int count);

/// Exact k-th Fourier coefficient of the boundary function of r.
GaussianRational fourier_coefficient(const RationalFunction& r, int k);

/// Coefficients k = lo..hi in one pass (both splits computed once).
std::vector<GaussianRational> fourier_coefficients(const RationalFunction& r, int lo, int hi);

} // namespace bhk
