#include "bhk/hankel/kernel.hpp"

#include "bhk/core/circle.hpp"
#include "bhk/core/errors.hpp"

#include <Eigen/SVD>

namespace bhk {

HankelSymbol::HankelSymbol(RatMat phi) : phi_(std::move(phi)), p_(1) {
    const std::size_t n = phi_.rows(), m = phi_.cols();
    analytic_ = RatMat(n, m);
    anti_ = RatMat(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            PoleSplit s = pole_split(phi_(i, j));
            analytic_(i, j) = s.analytic;
            anti_(i, j) = s.antianalytic;
            if (!s.antianalytic.is_zero()) p_ = lcm(p_, s.antianalytic.den());
        }
    b_ = to_polymat(RationalFunction(p_) * anti_);
}

RationalFunction HankelSymbol::inner_multiple() const { return RationalFunction(p_, p_.reflected()); }

int KernelResult::polynomial_section_dim(int d) const {
    int total = 0;
    for (int deg : column_degrees) total += std::max(0, d - deg + 1);
    return total;
}

bool kernel_membership(const HankelSymbol& phi, const RatMat& f) {
    if (f.rows() != phi.cols()) throw std::invalid_argument("kernel membership: dimension mismatch");
    if (!is_analytic(f)) throw std::invalid_argument("kernel membership needs an analytic vector");
    RatMat g = phi.antianalytic() * f;
    return is_analytic(g);
}

KernelResult kernel_rational(const HankelSymbol& phi) {
    const std::size_t m = phi.cols();
    KernelResult out{MatrixInner::from_explicit(RatMat::identity(m)), PolyMat::identity(m), 0, std::vector<int>(m, 0)};
    if (phi.modulus().degree() <= 0) return out;

    InterpolationBasis ib = interpolation_module_basis(phi.numerator(), phi.modulus());
    InnerOuterResult io = inner_outer(to_ratmat(ib.basis));
    out.theta = io.theta;
    out.module_basis = ib.basis;
    out.column_degrees = column_degrees(ib.basis);
    out.defect_dim = ib.codimension;

    if (!out.theta.is_square()) throw InvariantViolation("kernel inner function is not square");
    if (!kernel_membership(phi, out.theta.generator()))
        throw InvariantViolation("a kernel generator column is not annihilated");
    auto model = out.theta.model_dimension();
    if (!model || *model != out.defect_dim)
        throw InvariantViolation("defect of the kernel inner function differs from the interpolation codimension");
    return out;
}

std::vector<std::vector<GaussianRational>> hankel_apply(const HankelSymbol& phi, const RatMat& f, int terms) {
    if (f.rows() != phi.cols() || f.cols() != 1) throw std::invalid_argument("hankel_apply needs an m x 1 vector");
    RatMat g = phi.matrix() * f;
    std::vector<std::vector<GaussianRational>> out;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        std::vector<GaussianRational> c = fourier_coefficients(g(i, 0), -terms, -1);
        out.emplace_back(c.rbegin(), c.rend());
    }
    return out;
}

int finite_section_kernel_dim(const HankelSymbol& phi, int d) {
    if (d < 0) throw std::invalid_argument("degree bound must be nonnegative");
    const int n = static_cast<int>(phi.rows()), m = static_cast<int>(phi.cols());
    const int terms = std::max(1, d + std::max(0, phi.modulus().degree()));
    const int unknowns = m * (d + 1);
    // coefficient (i, k) at -1..-(terms + d)
    std::vector<std::vector<std::complex<double>>> hat(static_cast<std::size_t>(n * m));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k) {
            auto c = fourier_coefficients(phi.matrix()(static_cast<std::size_t>(i), static_cast<std::size_t>(k)), -(terms + d), -1);
            auto& dst = hat[static_cast<std::size_t>(i * m + k)];
            for (auto it = c.rbegin(); it != c.rend(); ++it) dst.push_back(it->to_complex());
        }
    Eigen::MatrixXcd a(n * terms, unknowns);
    for (int i = 0; i < n; ++i)
        for (int j = 1; j <= terms; ++j)
            for (int k = 0; k < m; ++k)
                for (int s = 0; s <= d; ++s)
                    a(i * terms + j - 1, k * (d + 1) + s) = hat[static_cast<std::size_t>(i * m + k)][static_cast<std::size_t>(j + s - 1)];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    int rank = 0;
    if (sv.size() > 0 && sv(0) > 0.0)
        for (Eigen::Index t = 0; t < sv.size(); ++t)
            if (sv(t) > 1e-8 * sv(0)) ++rank;
    return unknowns - rank;
}

bool intertwine_check(const HankelSymbol& phi, int d) {
    const int terms = d + std::max(0, phi.modulus().degree()) + 2;
    const std::size_t m = phi.cols();
    for (std::size_t i = 0; i < m; ++i)
        for (int k = 0; k <= d; ++k) {
            RatMat f(m, 1), zf(m, 1);
            f(i, 0) = RationalFunction::z_pow(k);
            zf(i, 0) = RationalFunction::z_pow(k + 1);
            auto lhs = hankel_apply(phi, zf, terms);
            auto base = hankel_apply(phi, f, terms + 1);
            for (std::size_t r = 0; r < lhs.size(); ++r)
                for (int j = 0; j < terms; ++j)
                    if (lhs[r][static_cast<std::size_t>(j)] != base[r][static_cast<std::size_t>(j + 1)]) return false;
        }
    return true;
}

} // namespace bhk
