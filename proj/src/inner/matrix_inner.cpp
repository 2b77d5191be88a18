#include "bhk/inner/matrix_inner.hpp"

#include "bhk/core/circle.hpp"
#include "bhk/core/errors.hpp"
#include "bhk/core/roots.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <sstream>

namespace bhk {

std::string to_string(GramKind k) {
    switch (k) {
    case GramKind::Identity: return "identity";
    case GramKind::ConstantDiagonal: return "constant-diagonal";
    case GramKind::LaurentDiagonal: return "laurent-diagonal";
    case GramKind::Full: return "full";
    }
    return "unknown";
}

class NumericNormalizer {
public:
    virtual ~NumericNormalizer() = default;
    virtual Eigen::MatrixXcd operator()(std::complex<double> z) const = 0;
};

namespace {

class DiagonalNormalizer : public NumericNormalizer {
public:
    explicit DiagonalNormalizer(const RatMat& gram) {
        for (std::size_t j = 0; j < gram.rows(); ++j) factors_.emplace_back(gram(j, j));
    }
    Eigen::MatrixXcd operator()(std::complex<double> z) const override {
        const auto n = static_cast<Eigen::Index>(factors_.size());
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j) d(j, j) = factors_[static_cast<std::size_t>(j)](z);
        return d;
    }

private:
    std::vector<ScalarSpectralFactor> factors_;
};

// Outer N with N* N = S from the Cholesky factor of a block Toeplitz section.
class BlockNormalizer : public NumericNormalizer {
public:
    explicit BlockNormalizer(const RatMat& gram) {
        const int m = static_cast<int>(gram.rows());
        const int samples = 4096;
        // Fourier coefficients of S^T, entry by entry
        std::vector<std::vector<std::complex<double>>> coef(static_cast<std::size_t>(m * m));
        fftw_complex* in = fftw_alloc_complex(samples);
        fftw_complex* out = fftw_alloc_complex(samples);
        fftw_plan plan = fftw_plan_dft_1d(samples, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const RationalFunction& e = gram(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
                for (int t = 0; t < samples; ++t) {
                    std::complex<double> v = e(std::polar(1.0, 2.0 * std::numbers::pi * t / samples));
                    in[t][0] = v.real();
                    in[t][1] = v.imag();
                }
                fftw_execute(plan);
                auto& c = coef[static_cast<std::size_t>(i * m + j)];
                c.resize(static_cast<std::size_t>(samples));
                for (int t = 0; t < samples; ++t) c[static_cast<std::size_t>(t)] = {out[t][0] / samples, out[t][1] / samples};
            }
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
        auto r = [&](int d) {
            Eigen::MatrixXcd b(m, m);
            int idx = ((d % samples) + samples) % samples;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) b(i, j) = coef[static_cast<std::size_t>(i * m + j)][static_cast<std::size_t>(idx)];
            return b;
        };

        double best = 1e300;
        for (int k : {24, 48, 96, 192, 384}) {
            const int size = (k + 1) * m;
            Eigen::MatrixXcd t(size, size);
            for (int a = 0; a <= k; ++a)
                for (int b = 0; b <= k; ++b) t.block(a * m, b * m, m, m) = r(a - b);
            Eigen::LLT<Eigen::MatrixXcd> llt(t);
            if (llt.info() != Eigen::Success) continue;
            Eigen::MatrixXcd l = llt.matrixL();
            std::vector<Eigen::MatrixXcd> h;
            for (int j = 0; j <= k; ++j) h.push_back(l.block(k * m, (k - j) * m, m, m).transpose());
            coeffs_ = h;
            double err = 0.0;
            for (int s = 0; s < 6; ++s) {
                std::complex<double> zeta = std::polar(1.0, 0.37 + 1.01 * s);
                Eigen::MatrixXcd nz = (*this)(zeta);
                Eigen::MatrixXcd diff = nz.adjoint() * nz - evaluate(gram, zeta);
                err = std::max(err, diff.norm() / std::max(1.0, evaluate(gram, zeta).norm()));
            }
            best = err;
            if (err < 1e-11) break;
        }
        if (best > 1e-7) throw InvariantViolation("block spectral factorization did not converge");
    }

    Eigen::MatrixXcd operator()(std::complex<double> z) const override {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(coeffs_.front().rows(), coeffs_.front().cols());
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

private:
    std::vector<Eigen::MatrixXcd> coeffs_;
};

bool is_diagonal(const RatMat& s) {
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j)
            if (i != j && !s(i, j).is_zero()) return false;
    return true;
}

} // namespace

MatrixInner MatrixInner::from_generator(const RatMat& v) {
    if (v.cols() == 0) return empty(v.rows());
    if (v.rows() < v.cols()) throw std::invalid_argument("inner function generator must be tall");
    if (!is_analytic(v)) throw std::invalid_argument("inner function generator has poles in the closed disk");
    MatrixInner t;
    t.v_ = v;
    t.gram_ = circle_adjoint(v) * v;
    const std::size_t m = v.cols();
    if (is_diagonal(t.gram_)) {
        bool constant = true, unit = true;
        for (std::size_t j = 0; j < m; ++j) {
            if (!t.gram_(j, j).is_constant()) constant = false;
            else if (!t.gram_(j, j).constant_value().is_one()) unit = false;
        }
        if (constant) {
            for (std::size_t j = 0; j < m; ++j) {
                GaussianRational c = t.gram_(j, j).constant_value();
                if (!c.is_real() || sgn(c.re()) <= 0) throw InvariantViolation("nonpositive squared column norm");
                t.tags_.push_back(c.re());
            }
            t.kind_ = unit ? GramKind::Identity : GramKind::ConstantDiagonal;
        } else {
            t.kind_ = GramKind::LaurentDiagonal;
        }
    } else {
        t.kind_ = GramKind::Full;
    }
    if (t.kind_ == GramKind::LaurentDiagonal || t.kind_ == GramKind::Full) {
        // V*V > 0 on the circle iff V keeps full column rank there
        Polynomial minors = maximal_minors_gcd(clear_denominators(v).num);
        if (auto w = circle_root(minors))
            throw DomainError("generator loses rank on the unit circle near " + std::to_string(w->real()) +
                              (w->imag() < 0 ? "" : "+") + std::to_string(w->imag()) + "i");
    }
    t.build_numeric();
    return t;
}

MatrixInner MatrixInner::from_explicit(const RatMat& theta) {
    InnerCheck c = is_inner(theta);
    if (!c.inner) throw std::invalid_argument("matrix is not inner: " + c.witness);
    return from_generator(theta);
}

MatrixInner MatrixInner::from_scaled_columns(const RatMat& v, const std::vector<Rational>& tags) {
    InnerCheck c = is_inner_scaled(v, tags);
    if (!c.inner) throw std::invalid_argument("scaled columns are not orthogonal with the given norms: " + c.witness);
    return from_generator(v);
}

MatrixInner MatrixInner::empty(std::size_t n) {
    MatrixInner t;
    t.v_ = RatMat(n, 0);
    t.gram_ = RatMat(0, 0);
    t.kind_ = GramKind::Identity;
    return t;
}

void MatrixInner::build_numeric() {
    if (kind_ == GramKind::LaurentDiagonal)
        numeric_ = std::make_shared<DiagonalNormalizer>(gram_);
    else if (kind_ == GramKind::Full)
        numeric_ = std::make_shared<BlockNormalizer>(gram_);
}

std::optional<RatMat> MatrixInner::explicit_matrix() const {
    if (kind_ == GramKind::Identity) return v_;
    return std::nullopt;
}

Eigen::MatrixXcd MatrixInner::normalizer(std::complex<double> z) const {
    const auto m = static_cast<Eigen::Index>(cols());
    switch (kind_) {
    case GramKind::Identity: return Eigen::MatrixXcd::Identity(m, m);
    case GramKind::ConstantDiagonal: {
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(m, m);
        for (Eigen::Index j = 0; j < m; ++j) d(j, j) = std::sqrt(tags_[static_cast<std::size_t>(j)].get_d());
        return d;
    }
    default: return (*numeric_)(z);
    }
}

Eigen::MatrixXcd MatrixInner::operator()(std::complex<double> z) const {
    Eigen::MatrixXcd v = evaluate(v_, z);
    if (kind_ == GramKind::Identity || cols() == 0) return v;
    Eigen::MatrixXcd n = normalizer(z);
    // V N^{-1}, solved on the right
    return n.transpose().partialPivLu().solve(v.transpose()).transpose();
}

std::optional<int> MatrixInner::model_dimension() const {
    if (!is_square()) return std::nullopt;
    if (cols() == 0) return 0;
    RationalFunction d = det(v_);
    if (d.num().degree() <= 0) return 0;
    return count_roots_in_open_disk(d.num());
}

std::string MatrixInner::describe() const {
    std::ostringstream os;
    os << rows() << "x" << cols() << " inner (" << to_string(kind_) << ")";
    return os.str();
}

InnerCheck is_inner_scaled(const RatMat& m, const std::vector<Rational>& tags) {
    if (tags.size() != m.cols()) return {false, "tag count differs from column count"};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (circle_root(m(i, j).den())) return {false, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") has a pole on the circle"};
            if (!is_analytic(m(i, j)))
                return {false, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + m(i, j).str() +
                                   " has a pole in the disk"};
        }
    for (const auto& t : tags)
        if (sgn(t) <= 0) return {false, "nonpositive tag"};
    RatMat s = circle_adjoint(m) * m;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) {
            RationalFunction want = i == j ? RationalFunction(GaussianRational(tags[i])) : RationalFunction();
            if (s(i, j) != want)
                return {false, "(M*M)(" + std::to_string(i) + "," + std::to_string(j) + ") = " + s(i, j).str()};
        }
    return {true, ""};
}

InnerCheck is_inner(const RatMat& m) { return is_inner_scaled(m, std::vector<Rational>(m.cols(), Rational(1))); }

bool range_contains(const MatrixInner& theta, const RatMat& f) {
    if (f.rows() != theta.rows()) throw std::invalid_argument("range test: row mismatch");
    if (theta.cols() == 0) return f.is_zero();
    auto x = solve(theta.generator(), f);
    return x && is_analytic(*x);
}

std::optional<UnitaryWitness> equal_up_to_right_unitary(const MatrixInner& a, const MatrixInner& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
    UnitaryWitness w;
    if (a.cols() == 0) {
        w.exact = true;
        return w;
    }
    if (a.is_explicit() && b.is_explicit()) {
        const GaussianRational zeta0(Rational(3, 5), Rational(4, 5));
        QMat wv = conj_transpose(evaluate(b.generator(), zeta0)) * evaluate(a.generator(), zeta0);
        if (b.generator() * to_ratmat(wv) != a.generator()) return std::nullopt;
        if (conj_transpose(wv) * wv != QMat::identity(wv.rows()))
            throw InvariantViolation("right factor between inner functions is not unitary");
        w.exact = true;
        w.value = wv;
        w.numeric = to_eigen(wv);
        return w;
    }
    if (!range_contains(a, b.generator()) || !range_contains(b, a.generator())) return std::nullopt;
    const std::complex<double> z0 = std::polar(1.0, 0.7);
    w.numeric = b(z0).adjoint() * a(z0);
    const auto m = w.numeric.rows();
    double res = (w.numeric.adjoint() * w.numeric - Eigen::MatrixXcd::Identity(m, m)).norm();
    for (int k = 1; k < 6; ++k) {
        std::complex<double> z = std::polar(1.0, 0.7 + 1.1 * k);
        res = std::max(res, (b(z).adjoint() * a(z) - w.numeric).norm());
    }
    w.numeric_residual = res;
    return w;
}

} // namespace bhk
