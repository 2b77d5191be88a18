#include "bhk/inner/inner_outer.hpp"

#include "bhk/core/blaschke.hpp"
#include "bhk/core/circle.hpp"
#include "bhk/core/errors.hpp"
#include "bhk/core/roots.hpp"

#include <algorithm>
#include <numeric>

namespace bhk {

QMat BPFactor::projection() const {
    QMat vs = conj_transpose(vector);
    GaussianRational scale = (vs * vector)(0, 0).inverse();
    return scale * (vector * vs);
}

RatMat BPFactor::matrix() const {
    const std::size_t n = vector.rows();
    RatMat p = to_ratmat(projection());
    return RatMat::identity(n) + (blaschke_factor(alpha) - RationalFunction(1)) * p;
}

BPExtraction bp_extract(const RatMat& m, const GaussianRational& alpha) {
    if (m.rows() != m.cols()) throw std::invalid_argument("bp_extract needs a square matrix");
    if (alpha.norm2() >= 1) throw std::invalid_argument("extraction point " + alpha.str() + " is not in the open disk");
    QMat at = evaluate(m, alpha);
    if (!det(at).is_zero()) throw std::invalid_argument("det M does not vanish at " + alpha.str());
    QMat ns = nullspace(conj_transpose(at));
    BPFactor f{alpha, ns.block(0, 0, ns.rows(), 1)};
    RatMat p = to_ratmat(f.projection());
    RatMat pm = p * m;
    RatMat rest = m + (blaschke_factor(alpha).inverse() - RationalFunction(1)) * pm;
    if (!is_analytic(rest)) throw InvariantViolation("Blaschke-Potapov remainder is not analytic");
    if (f.matrix() * rest != m) throw InvariantViolation("Blaschke-Potapov reassembly failed");
    return {f, rest};
}

std::optional<RatMat> InnerOuterResult::outer_exact() const {
    if (theta.is_explicit()) return core;
    return std::nullopt;
}

Eigen::MatrixXcd InnerOuterResult::outer(std::complex<double> z) const {
    return theta.normalizer(z) * evaluate(core, z);
}

namespace {

bool has_open_disk_root(const Polynomial& g) {
    if (g.degree() <= 0) return false;
    if (!circle_root(g)) return count_roots_in_open_disk(g) > 0;
    for (const auto& r : locate_roots(g))
        if (std::abs(r.value) < 1.0 - kDiskMargin) return true;
    return false;
}

bool is_square_rational(const Rational& q) {
    return sgn(q) > 0 && mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

Rational rational_sqrt(const Rational& q) {
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return Rational(n, d);
}

// Scales an analytic column by an outer invertible scalar so that its squared
// norm on the circle becomes a positive constant, when that is possible over Q(i).
RatMat simplify_column(const RatMat& u) {
    ClearedMatrix c = clear_denominators(u);
    PolyMat col = c.num;
    Polynomial content;
    for (std::size_t i = 0; i < col.rows(); ++i) content = gcd(content, col(i, 0));
    if (content.degree() > 0) {
        if (auto split = try_split_disk(content); split && split->outside.degree() > 0)
            for (std::size_t i = 0; i < col.rows(); ++i) col(i, 0) = col(i, 0).exact_div(split->outside);
    }
    RatMat v = to_ratmat(col);
    RationalFunction s = (circle_adjoint(v) * v)(0, 0);
    int top = 0;
    for (std::size_t i = 0; i < col.rows(); ++i) top = std::max(top, col(i, 0).degree());
    RationalFunction shifted = s * RationalFunction::z_pow(top);
    if (!shifted.is_polynomial()) return v;
    auto split = try_split_disk(shifted.num());
    if (!split) return v;
    const Polynomial& g = split->outside;
    RationalFunction kappa = s / (RationalFunction(g) * circle_adjoint(RationalFunction(g)));
    if (!kappa.is_constant()) return v;
    GaussianRational k = kappa.constant_value();
    if (!k.is_real() || sgn(k.re()) <= 0) return v;
    RationalFunction scale = RationalFunction(g).inverse();
    if (is_square_rational(k.re())) scale *= RationalFunction(GaussianRational(rational_sqrt(k.re()))).inverse();
    return scale * v;
}

// Orthogonal columns spanning the same H^2 range as p, or nothing when the
// triangular change of basis is not invertible over H^infinity.
std::optional<RatMat> orthogonal_generator(const RatMat& p) {
    const std::size_t r = p.cols();
    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t shift = 0; shift < r; ++shift) {
        RatMat q = p.select_cols(perm);
        RatMat u(q.rows(), 0);
        std::vector<RationalFunction> norms;
        bool ok = true;
        for (std::size_t k = 0; k < r && ok; ++k) {
            RatMat col = q.column(k);
            RatMat next = col;
            for (std::size_t j = 0; j < k; ++j) {
                RatMat uj = u.column(j);
                RationalFunction mu = (circle_adjoint(uj) * col)(0, 0) / norms[j];
                if (!is_analytic(mu)) {
                    ok = false;
                    break;
                }
                next = next - mu * uj;
            }
            if (!ok) break;
            next = simplify_column(next);
            norms.push_back((circle_adjoint(next) * next)(0, 0));
            u = hstack(u, next);
        }
        if (ok) return u;
        std::rotate(perm.begin(), perm.begin() + 1, perm.end());
    }
    return std::nullopt;
}

struct PotapovChain {
    RatMat theta;
    RatMat rest;
    std::vector<BPFactor> factors;
};

std::optional<PotapovChain> potapov_chain(const RatMat& p) {
    const std::size_t n = p.rows();
    Polynomial d = det(p).num();
    int inside = count_roots_in_open_disk(d);
    int rational = 0;
    for (const auto& [a, mult] : gaussian_rational_roots(d))
        if (a.norm2() < 1) rational += mult;
    if (rational != inside) return std::nullopt;

    PotapovChain chain{RatMat::identity(n), p, {}};
    while (true) {
        Polynomial dn = det(chain.rest).num();
        std::optional<GaussianRational> next;
        for (const auto& [a, mult] : gaussian_rational_roots(dn))
            if (a.norm2() < 1) {
                next = a;
                break;
            }
        if (!next) break;
        BPExtraction e = bp_extract(chain.rest, *next);
        chain.theta = chain.theta * e.factor.matrix();
        chain.factors.push_back(e.factor);
        chain.rest = e.rest;
    }
    return chain;
}

} // namespace

bool is_outer(const RatMat& g) {
    if (!is_analytic(g)) return false;
    ClearedMatrix c = clear_denominators(g);
    if (generic_rank(c.num) != static_cast<int>(g.rows())) return false;
    return !has_open_disk_root(maximal_minors_gcd(c.num));
}

InnerOuterResult inner_outer(const RatMat& f) {
    if (f.is_zero()) throw std::invalid_argument("inner-outer factorization of the zero matrix");
    if (!is_analytic(f)) throw std::invalid_argument("inner-outer factorization needs an analytic matrix");
    ClearedMatrix c = clear_denominators(f);
    const std::size_t r = static_cast<std::size_t>(generic_rank(c.num));

    // F = P1 * core with P1 of full column rank and core polynomial of full row rank everywhere
    PolyMat p1 = c.num;
    RatMat core = to_ratmat(PolyMat::identity(f.cols()));
    if (r < f.cols()) {
        ColumnEchelon e = column_echelon(c.num);
        p1 = e.reduced.block(0, 0, f.rows(), r);
        PolyMat uinv = classical_adjoint(e.transform);
        Polynomial du = det(e.transform);
        if (du.degree() != 0) throw InvariantViolation("column echelon transform is not unimodular");
        core = to_ratmat(uinv.block(0, 0, r, f.cols()));
        core = RationalFunction(du).inverse() * core;
    }
    core = RationalFunction(c.den).inverse() * core;

    Polynomial minors = maximal_minors_gcd(p1);
    if (auto w = circle_root(minors))
        throw DomainError("matrix loses rank on the unit circle near " + std::to_string(w->real()) +
                          (w->imag() < 0 ? "" : "+") + std::to_string(w->imag()) + "i");

    RatMat p = to_ratmat(p1);
    InnerOuterResult out{MatrixInner::empty(f.rows()), {}, r, {}};
    bool done = false;
    if (p.rows() == p.cols()) {
        if (auto chain = potapov_chain(p)) {
            out.theta = MatrixInner::from_explicit(chain->theta);
            out.core = chain->rest * core;
            out.chain = std::move(chain->factors);
            done = true;
        }
    }
    if (!done) {
        RatMat v = p;
        if (auto u = orthogonal_generator(p)) v = *u;
        out.theta = MatrixInner::from_generator(v);
        auto x = solve(v, p);
        if (!x || !is_analytic(*x)) throw InvariantViolation("orthogonalized generator changed the range");
        out.core = *x * core;
    }

    if (out.theta.generator() * out.core != f) throw InvariantViolation("inner-outer reassembly failed");
    if (!is_outer(out.core)) throw InvariantViolation("outer factor has zeros in the disk");
    return out;
}

} // namespace bhk
