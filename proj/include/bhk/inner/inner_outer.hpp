#pragma once

#include "bhk/inner/matrix_inner.hpp"

namespace bhk {

/// Elementary Blaschke-Potapov factor I + (B_alpha - 1) P with
/// P = v v* / (v* v) the orthogonal projection onto span(v).
struct BPFactor {
    GaussianRational alpha;
    QMat vector;  ///< v, a single column

    QMat projection() const;
    RatMat matrix() const;
};

struct BPExtraction {
    BPFactor factor;
    RatMat rest;  ///< analytic, with M = factor.matrix() * rest
};

/// Splits one zero alpha of det M off a square analytic M.
/// Throws std::invalid_argument unless |alpha| < 1 and det M(alpha) = 0.
BPExtraction bp_extract(const RatMat& m, const GaussianRational& alpha);

/// F = Theta G with Theta inner n x r and G outer r x m, r = rank F.
/// G = N core where N is the normalizer of theta, so F = V core exactly
/// with V = theta.generator().
struct InnerOuterResult {
    MatrixInner theta;
    RatMat core;
    std::size_t rank = 0;
    std::vector<BPFactor> chain;  ///< Potapov factors when theta was built from them

    /// G exactly when theta is explicit.
    std::optional<RatMat> outer_exact() const;
    Eigen::MatrixXcd outer(std::complex<double> z) const;
};

/// Throws std::invalid_argument for F = 0 or F with poles in the closed disk,
/// DomainError when F loses rank at a point of the circle.
InnerOuterResult inner_outer(const RatMat& f);

/// True when g has full row rank and its maximal minors have no common zero in |z| < 1.
bool is_outer(const RatMat& g);

} // namespace bhk
