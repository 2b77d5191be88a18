#pragma once

#include "bhk/inner/matrix_inner.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bhk::verify {

struct Tolerances {
    double identity = 1e-8;  ///< residual threshold for numeric identities
    double rank_gap = 1e-8;  ///< relative singular value cutoff
};

struct Residual {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct ResidualSummary {
    std::vector<Residual> residuals;
    bool pass() const;
};

/// Seeded points on the unit circle (angles uniform in [0, 2 pi)).
std::vector<std::complex<double>> circle_samples(int count, std::uint64_t seed);

/// max |Theta* Theta - I| over the samples, plus |Theta - V N^{-1}| consistency
/// for non-explicit inner functions.
ResidualSummary crosscheck_inner(const MatrixInner& theta, int samples, std::uint64_t seed, const Tolerances& tol = {});

/// SVD rank at `points` seeded circle points against generic_rank, and
/// FFT Fourier coefficients (fft_size samples) against exact ones for |k| <= 8.
ResidualSummary crosscheck_matrix(const RatMat& m, int points, std::uint64_t seed, const Tolerances& tol = {},
                                  int fft_size = 1024);

/// Numeric rank from singular values: sigma_k > rank_gap * sigma_0.
int svd_rank(const Eigen::MatrixXcd& a, double rank_gap = 1e-8);

/// Fourier coefficients c_{-half}..c_{half} of r from fft_size circle samples.
std::vector<std::complex<double>> fft_coefficients(const RationalFunction& r, int half, int fft_size = 1024);

} // namespace bhk::verify
