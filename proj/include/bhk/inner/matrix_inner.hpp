#pragma once

#include "bhk/polymat/polymat.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bhk {

/// How the normalizer N (outer, V*V = N*N) of a generator V is known.
enum class GramKind {
    Identity,          ///< V*V = I: V is the inner function itself
    ConstantDiagonal,  ///< V*V = diag(c_j), c_j positive rationals; N = diag(sqrt(c_j))
    LaurentDiagonal,   ///< V*V diagonal with rational entries; N from scalar spectral factors
    Full               ///< general V*V; N from a block spectral factorization
};

std::string to_string(GramKind k);

class NumericNormalizer;

/// Matrix inner function Theta = V N^{-1}, where V is an analytic rational
/// generator with V*V > 0 on the circle and N is the outer factor of V*V.
/// Range: Theta H^2 = V H^2. Every certificate is an exact identity on V and
/// V*V; N is only ever evaluated numerically.
class MatrixInner {
public:
    /// Theta itself; requires Theta analytic and Theta* Theta = I exactly.
    static MatrixInner from_explicit(const RatMat& theta);
    /// Scaled-column convention: Theta = V diag(tags)^{-1/2}; requires V*V = diag(tags).
    static MatrixInner from_scaled_columns(const RatMat& v, const std::vector<Rational>& tags);
    /// Any analytic V with V*V positive definite on the circle.
    static MatrixInner from_generator(const RatMat& v);
    /// The n x 0 inner function (range {0}).
    static MatrixInner empty(std::size_t n);

    std::size_t rows() const { return v_.rows(); }
    std::size_t cols() const { return v_.cols(); }
    bool is_square() const { return rows() == cols(); }
    GramKind kind() const { return kind_; }

    const RatMat& generator() const { return v_; }
    const RatMat& gram() const { return gram_; }
    /// Squared column norms for ConstantDiagonal (all ones for Identity).
    const std::vector<Rational>& tags() const { return tags_; }

    bool is_explicit() const { return kind_ == GramKind::Identity; }
    /// Theta as an exact rational matrix when known.
    std::optional<RatMat> explicit_matrix() const;

    Eigen::MatrixXcd operator()(std::complex<double> z) const;
    Eigen::MatrixXcd normalizer(std::complex<double> z) const;

    /// dim H^2 minus Theta H^2 for square Theta: disk zeros of det V.
    std::optional<int> model_dimension() const;

    std::string describe() const;

private:
    MatrixInner() = default;
    void build_numeric();

    RatMat v_;
    RatMat gram_;
    GramKind kind_ = GramKind::Identity;
    std::vector<Rational> tags_;
    std::shared_ptr<const NumericNormalizer> numeric_;
};

struct InnerCheck {
    bool inner = false;
    std::string witness;  ///< first failing entry or condition when not inner
};

/// Exact test: M analytic on the closed disk and M* M = I.
InnerCheck is_inner(const RatMat& m);
/// Scaled-column form: M analytic and M* M = diag(tags) with tags > 0.
InnerCheck is_inner_scaled(const RatMat& m, const std::vector<Rational>& tags);

/// Columns of f lie in closure(V H^2) for the range of theta (exact).
bool range_contains(const MatrixInner& theta, const RatMat& f);

struct UnitaryWitness {
    bool exact = false;        ///< value holds W exactly and A = B W was checked exactly
    QMat value;                ///< exact W when available
    Eigen::MatrixXcd numeric;  ///< W evaluated from the normalized inner functions
    double numeric_residual = 0.0;  ///< max deviation from unitary and constant over samples
};

/// W with A = B W (constant unitary) when the ranges agree; empty otherwise.
/// Range equality is always decided exactly.
std::optional<UnitaryWitness> equal_up_to_right_unitary(const MatrixInner& a, const MatrixInner& b);

} // namespace bhk
