#include "bhk/verify/numeric.hpp"

#include "bhk/core/circle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace bhk::verify {

bool ResidualSummary::pass() const {
    return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.pass; });
}

std::vector<std::complex<double>> circle_samples(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<std::complex<double>> pts;
    for (int k = 0; k < count; ++k) pts.push_back(std::polar(1.0, angle(rng)));
    return pts;
}

int svd_rank(const Eigen::MatrixXcd& a, double rank_gap) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > rank_gap * sv(0)) ++r;
    return r;
}

std::vector<std::complex<double>> fft_coefficients(const RationalFunction& r, int half, int fft_size) {
    fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(fft_size));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(fft_size));
    fftw_plan plan = fftw_plan_dft_1d(fft_size, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    for (int j = 0; j < fft_size; ++j) {
        std::complex<double> v = r(std::polar(1.0, 2.0 * std::numbers::pi * j / fft_size));
        in[j][0] = v.real();
        in[j][1] = v.imag();
    }
    fftw_execute(plan);
    std::vector<std::complex<double>> c;
    for (int k = -half; k <= half; ++k) {
        const int idx = ((k % fft_size) + fft_size) % fft_size;
        c.emplace_back(out[idx][0] / fft_size, out[idx][1] / fft_size);
    }
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
    return c;
}

ResidualSummary crosscheck_inner(const MatrixInner& theta, int samples, std::uint64_t seed, const Tolerances& tol) {
    ResidualSummary s;
    double unitary = 0.0, consistency = 0.0;
    for (const auto& z : circle_samples(samples, seed)) {
        Eigen::MatrixXcd t = theta(z);
        const auto m = t.cols();
        unitary = std::max(unitary, (t.adjoint() * t - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff());
        if (!theta.is_explicit() && m > 0) {
            Eigen::MatrixXcd v = evaluate(theta.generator(), z);
            consistency = std::max(consistency, (t * theta.normalizer(z) - v).cwiseAbs().maxCoeff());
        }
    }
    s.residuals.push_back({"max |Theta*Theta - I|", unitary, tol.identity, unitary < tol.identity});
    if (!theta.is_explicit())
        s.residuals.push_back({"max |Theta N - V|", consistency, tol.identity, consistency < tol.identity});
    return s;
}

ResidualSummary crosscheck_matrix(const RatMat& m, int points, std::uint64_t seed, const Tolerances& tol, int fft_size) {
    ResidualSummary s;
    const int exact_rank = generic_rank(m);
    int mismatches = 0;
    for (const auto& z : circle_samples(points, seed))
        if (svd_rank(evaluate(m, z), tol.rank_gap) != exact_rank) ++mismatches;
    s.residuals.push_back({"sampled SVD rank mismatches (generic rank " + std::to_string(exact_rank) + ")",
                           static_cast<double>(mismatches), 0.5, mismatches == 0});

    const int half = 8;
    double fourier = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const RationalFunction& r = m(i, j);
            auto numeric = fft_coefficients(r, half, fft_size);
            auto exact = fourier_coefficients(r, -half, half);
            for (int k = 0; k <= 2 * half; ++k)
                fourier = std::max(fourier, std::abs(numeric[static_cast<std::size_t>(k)] - exact[static_cast<std::size_t>(k)].to_complex()));
        }
    s.residuals.push_back({"max |FFT - exact Fourier coefficient|, |k| <= 8", fourier, tol.identity, fourier < tol.identity});
    return s;
}

} // namespace bhk::verify
