#include "bhk/polymat/polymat.hpp"

#include "bhk/core/circle.hpp"
#include "bhk/core/errors.hpp"
#include "bhk/core/roots.hpp"

#include <algorithm>
#include <numeric>

namespace bhk {

RatMat to_ratmat(const PolyMat& m) {
    return m.map([](const Polynomial& p) { return RationalFunction(p); });
}

RatMat to_ratmat(const QMat& m) {
    return m.map([](const GaussianRational& c) { return RationalFunction(c); });
}

PolyMat to_polymat(const RatMat& m) {
    return m.map([](const RationalFunction& r) {
        if (!r.is_polynomial()) throw std::invalid_argument("entry is not a polynomial: " + r.str());
        return r.num();
    });
}

ClearedMatrix clear_denominators(const RatMat& m) {
    Polynomial d(1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).den().degree() > 0) d = lcm(d, m(i, j).den());
    PolyMat num(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            num(i, j) = m(i, j).num() * d.exact_div(m(i, j).den());
    return {num, d};
}

PolyMat clear_row_denominators(const RatMat& m) {
    PolyMat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Polynomial d(1);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).den().degree() > 0) d = lcm(d, m(i, j).den());
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).num() * d.exact_div(m(i, j).den());
    }
    return out;
}

RatMat circle_adjoint(const RatMat& m) {
    RatMat out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = circle_adjoint(m(i, j));
    return out;
}

void require_no_circle_poles(const RatMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) require_no_circle_poles(m(i, j));
}

bool is_analytic(const RatMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!is_analytic(m(i, j))) return false;
    return true;
}

QMat evaluate(const RatMat& m, const GaussianRational& x) {
    return m.map([&](const RationalFunction& r) { return r(x); });
}

QMat evaluate(const PolyMat& m, const GaussianRational& x) {
    return m.map([&](const Polynomial& p) { return p(x); });
}

Eigen::MatrixXcd evaluate(const RatMat& m, std::complex<double> x) {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j)(x);
    return out;
}

Eigen::MatrixXcd to_eigen(const QMat& m) {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_complex();
    return out;
}

QMat conj_transpose(const QMat& m) {
    QMat out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j).conj();
    return out;
}

QMat rref(const QMat& m, std::vector<std::size_t>* pivots) {
    QMat a = m;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        GaussianRational inv = a(r, c).inverse();
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            GaussianRational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots) *pivots = piv;
    return a;
}

int rank(const QMat& m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return static_cast<int>(piv.size());
}

QMat nullspace(const QMat& m) {
    std::vector<std::size_t> piv;
    QMat r = rref(m, &piv);
    std::vector<std::size_t> free;
    for (std::size_t c = 0, k = 0; c < m.cols(); ++c) {
        if (k < piv.size() && piv[k] == c)
            ++k;
        else
            free.push_back(c);
    }
    QMat out(m.cols(), free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        out(free[f], f) = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) out(piv[k], f) = -r(k, free[f]);
    }
    return out;
}

GaussianRational det(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    QMat a = m;
    GaussianRational d = 1;
    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        GaussianRational inv = a(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            GaussianRational f = a(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return d;
}

namespace {

// Fraction-free elimination. Returns the rank; for a square input *det_out
// receives the determinant.
int bareiss(PolyMat a, Polynomial* det_out) {
    const std::size_t n = a.rows(), m = a.cols();
    Polynomial prev(1);
    std::size_t r = 0;
    bool negate = false;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        std::size_t p = n;
        int best = 0;
        for (std::size_t i = r; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            if (p == n || a(i, c).degree() < best) {
                p = i;
                best = a(i, c).degree();
            }
        }
        if (p == n) {
            if (det_out) {
                *det_out = Polynomial();
                return static_cast<int>(r);
            }
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < m; ++j) std::swap(a(p, j), a(r, j));
            negate = !negate;
        }
        for (std::size_t i = r + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < m; ++j) {
                Polynomial v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
                a(i, j) = v.exact_div(prev);
            }
            a(i, c) = Polynomial();
        }
        prev = a(r, c);
        ++r;
    }
    if (det_out) *det_out = negate ? -prev : prev;
    return static_cast<int>(r);
}

} // namespace

int generic_rank(const PolyMat& m) {
    if (m.empty()) return 0;
    return bareiss(m, nullptr);
}

int generic_rank(const RatMat& m) { return generic_rank(clear_row_denominators(m)); }

Polynomial det(const PolyMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    if (m.rows() == 0) return Polynomial(1);
    Polynomial d;
    bareiss(m, &d);
    return d;
}

RationalFunction det(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    Polynomial scale(1);
    PolyMat cleared(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Polynomial d(1);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).den().degree() > 0) d = lcm(d, m(i, j).den());
        for (std::size_t j = 0; j < m.cols(); ++j) cleared(i, j) = m(i, j).num() * d.exact_div(m(i, j).den());
        scale *= d;
    }
    return RationalFunction(det(cleared), scale);
}

namespace {

template <typename M>
M minor_without(const M& m, std::size_t row, std::size_t col) {
    M out(m.rows() - 1, m.cols() - 1);
    for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
            if (j == col) continue;
            out(oi, oj++) = m(i, j);
        }
        ++oi;
    }
    return out;
}

} // namespace

RatMat classical_adjoint(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("adjoint of a non-square matrix");
    const std::size_t n = m.rows();
    RatMat out(n, n);
    if (n == 1) {
        out(0, 0) = 1;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RationalFunction c = det(minor_without(m, i, j));
            out(j, i) = (i + j) % 2 == 0 ? c : -c;
        }
    return out;
}

PolyMat classical_adjoint(const PolyMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("adjoint of a non-square matrix");
    const std::size_t n = m.rows();
    PolyMat out(n, n);
    if (n == 1) {
        out(0, 0) = Polynomial(1);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Polynomial c = det(minor_without(m, i, j));
            out(j, i) = (i + j) % 2 == 0 ? c : -c;
        }
    return out;
}

std::optional<RatMat> inverse(const RatMat& m) {
    RationalFunction d = det(m);
    if (d.is_zero()) return std::nullopt;
    return d.inverse() * classical_adjoint(m);
}

std::vector<std::size_t> independent_rows(const RatMat& m) {
    std::vector<std::size_t> rows;
    PolyMat cleared = clear_row_denominators(m);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<std::size_t> trial = rows;
        trial.push_back(i);
        if (generic_rank(cleared.select_rows(trial)) == static_cast<int>(trial.size())) rows = std::move(trial);
    }
    return rows;
}

std::vector<std::size_t> independent_columns(const RatMat& m) { return independent_rows(m.transpose()); }

std::optional<RatMat> solve(const RatMat& a, const RatMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    std::vector<std::size_t> rows = independent_rows(a);
    if (rows.size() != a.cols()) throw std::invalid_argument("solve: matrix lacks full column rank");
    auto inv = inverse(a.select_rows(rows));
    if (!inv) throw InvariantViolation("selected rows are singular");
    RatMat x = *inv * b.select_rows(rows);
    if (a * x != b) return std::nullopt;
    return x;
}

Polynomial maximal_minors_gcd(const PolyMat& m) {
    const bool tall = m.rows() >= m.cols();
    const PolyMat t = tall ? m : m.transpose();
    const std::size_t n = t.rows(), k = t.cols();
    if (k == 0) return Polynomial(1);
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    Polynomial g;
    while (true) {
        g = gcd(g, det(t.select_rows(pick)));
        if (g.is_one()) return g;
        // next k-subset in lexicographic order
        std::size_t pos = k;
        while (pos > 0 && pick[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t q = pos; q < k; ++q) pick[q] = pick[q - 1] + 1;
    }
    return g;
}

namespace {

void column_axpy(PolyMat& m, std::size_t dst, const Polynomial& q, std::size_t src) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!m(i, src).is_zero()) m(i, dst) -= q * m(i, src);
}

void swap_columns(PolyMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

} // namespace

ColumnEchelon column_echelon(const PolyMat& d) {
    const std::size_t n = d.rows(), m = d.cols();
    PolyMat h = d, u = PolyMat::identity(m);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n && k < m; ++i) {
        while (true) {
            std::size_t p = m;
            for (std::size_t j = k; j < m; ++j) {
                if (h(i, j).is_zero()) continue;
                if (p == m || h(i, j).degree() < h(i, p).degree()) p = j;
            }
            if (p == m) break;
            bool remaining = false;
            for (std::size_t j = k; j < m; ++j) {
                if (j == p || h(i, j).is_zero()) continue;
                Polynomial q = Polynomial::divmod(h(i, j), h(i, p)).first;
                column_axpy(h, j, q, p);
                column_axpy(u, j, q, p);
                if (!h(i, j).is_zero()) remaining = true;
            }
            if (!remaining) {
                swap_columns(h, p, k);
                swap_columns(u, p, k);
                ++k;
                break;
            }
        }
    }
    return {h, u, k};
}

std::vector<int> column_degrees(const PolyMat& m) {
    std::vector<int> out(m.cols(), Polynomial::kZeroDegree);
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) out[j] = std::max(out[j], m(i, j).degree());
    return out;
}

PolyMat column_reduce(const PolyMat& m0) {
    PolyMat m = m0;
    const std::size_t rows = m.rows(), cols = m.cols();
    for (int guard = 0; guard < 100000; ++guard) {
        std::vector<int> deg = column_degrees(m);
        QMat lead(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (deg[j] >= 0) lead(i, j) = m(i, j).coeff(deg[j]);
        QMat ns = nullspace(lead);
        if (ns.cols() == 0) break;
        // lower the highest-degree column that takes part in the relation
        std::size_t target = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (ns(j, 0).is_zero()) continue;
            if (target == cols || deg[j] >= deg[target]) target = j;
        }
        if (deg[target] < 0) throw std::invalid_argument("column_reduce: zero column");
        GaussianRational inv = ns(target, 0).inverse();
        for (std::size_t j = 0; j < cols; ++j) {
            if (j == target || ns(j, 0).is_zero()) continue;
            Polynomial q = Polynomial::monomial(deg[target] - deg[j], -(ns(j, 0) * inv));
            column_axpy(m, target, q, j);
        }
    }
    std::vector<int> deg = column_degrees(m);
    for (std::size_t j = 0; j < cols; ++j) {
        if (deg[j] < 0) continue;
        for (std::size_t i = 0; i < rows; ++i) {
            if (m(i, j).degree() != deg[j]) continue;
            GaussianRational inv = m(i, j).leading().inverse();
            for (std::size_t r = 0; r < rows; ++r) m(r, j) *= inv;
            break;
        }
    }
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });
    return m.select_cols(order);
}

PolyMat hermite_kernel_basis(const PolyMat& d) {
    const std::size_t m = d.cols();
    if (d.rows() == 0) return PolyMat::identity(m);
    ColumnEchelon e = column_echelon(d);
    if (e.rank == m) return PolyMat(m, 0);
    std::vector<std::size_t> idx;
    for (std::size_t j = e.rank; j < m; ++j) idx.push_back(j);
    return column_reduce(e.transform.select_cols(idx));
}

PolyMat left_kernel_basis(const PolyMat& m) { return hermite_kernel_basis(m.transpose()).transpose(); }

InterpolationBasis interpolation_module_basis(const PolyMat& b, const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("interpolation modulus is zero");
    const std::size_t n = b.rows(), m = b.cols();
    if (p.degree() == 0) return {PolyMat::identity(m), p * PolyMat::identity(m), 0};
    if (!roots_in_open_disk(p)) throw std::invalid_argument("interpolation modulus has roots outside the open disk");

    // {(f, g) : B f - p g = 0} projects isomorphically onto the module
    PolyMat aug = hstack(b, (-p) * PolyMat::identity(n));
    PolyMat k = hermite_kernel_basis(aug);
    if (k.cols() != m) throw InvariantViolation("interpolation kernel has the wrong rank");
    PolyMat g = column_reduce(k.block(0, 0, m, m));

    Polynomial dg = det(g);
    if (dg.is_zero()) throw InvariantViolation("interpolation basis is singular");
    PolyMat h = classical_adjoint(g);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) h(i, j) = (h(i, j) * p).exact_div(dg);
    if (g * h != p * PolyMat::identity(m)) throw InvariantViolation("p I = G H certificate failed");
    PolyMat bg = b * g;
    for (std::size_t i = 0; i < bg.rows(); ++i)
        for (std::size_t j = 0; j < bg.cols(); ++j)
            if (!bg(i, j).divisible_by(p)) throw InvariantViolation("B G is not divisible by p");

    // independent count: rank of f -> B f mod p on (C[z]/p)^m
    const int dp = p.degree();
    QMat map(n * static_cast<std::size_t>(dp), m * static_cast<std::size_t>(dp));
    for (std::size_t j = 0; j < m; ++j)
        for (int t = 0; t < dp; ++t)
            for (std::size_t i = 0; i < n; ++i) {
                Polynomial img = Polynomial::divmod(b(i, j).shifted(t), p).second;
                for (int s = 0; s < dp; ++s)
                    map(i * static_cast<std::size_t>(dp) + static_cast<std::size_t>(s),
                        j * static_cast<std::size_t>(dp) + static_cast<std::size_t>(t)) = img.coeff(s);
            }
    int codim = rank(map);
    if (dg.degree() != codim)
        throw InvariantViolation("deg det G = " + std::to_string(dg.degree()) + " but the quotient has dimension " +
                                 std::to_string(codim));
    if (!p.pow(static_cast<unsigned>(m)).divisible_by(dg)) throw InvariantViolation("det G does not divide p^m");
    return {g, h, codim};
}

} // namespace bhk
