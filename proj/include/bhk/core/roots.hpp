#pragma once

#include "bhk/core/rational_function.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace bhk {

/// Roots whose modulus is within this distance of 1 count as circle roots.
inline constexpr double kDiskMargin = 1e-9;

struct RootEstimate {
    std::complex<double> value;
    int multiplicity = 1;
};

/// All roots of a nonzero polynomial, refined to well beyond double precision
/// before rounding. Multiplicities come from an exact squarefree decomposition.
std::vector<RootEstimate> locate_roots(const Polynomial& p);

/// Exact Schur-Cohn test: every root satisfies |r| < 1. Constants pass.
bool roots_in_open_disk(const Polynomial& p);
/// Exact: every root satisfies |r| > 1 (so p(0) != 0).
bool roots_outside_closed_disk(const Polynomial& p);

/// A root on the unit circle, if any. Exactly zero when gcd(p, p#) is constant.
std::optional<std::complex<double>> circle_root(const Polynomial& p);

/// p = inside * outside; inside monic with roots in |z| < 1, outside with roots in |z| > 1.
struct DiskSplit {
    Polynomial inside;
    Polynomial outside;
};
/// Empty when the disk factor is not a Gaussian-rational polynomial.
/// Throws DomainError when p has a root on the circle.
std::optional<DiskSplit> try_split_disk(const Polynomial& p);
/// As try_split_disk, but throws DomainError when the factor is irrational.
DiskSplit split_disk(const Polynomial& p);

/// Number of roots with |r| < 1, counted with multiplicity. Throws on circle roots.
int count_roots_in_open_disk(const Polynomial& p);

/// The roots that are Gaussian rationals, with multiplicity, each verified exactly.
std::vector<std::pair<GaussianRational, int>> gaussian_rational_roots(const Polynomial& p);

/// Exact test that s is real and strictly positive on the whole unit circle.
bool positive_on_circle(const RationalFunction& s);

/// Outer h with |h|^2 = s on the circle and h(0) > 0, for s > 0 on the circle.
/// Numeric: only used to evaluate normalized inner functions.
class ScalarSpectralFactor {
public:
    ScalarSpectralFactor() = default;
    explicit ScalarSpectralFactor(const RationalFunction& s);
    std::complex<double> operator()(std::complex<double> z) const;

private:
    std::complex<double> scale_{1.0};
    std::vector<std::complex<double>> zeros_;
    std::vector<std::complex<double>> poles_;
};

} // namespace bhk
