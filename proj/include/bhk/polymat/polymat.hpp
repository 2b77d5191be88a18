#pragma once

#include "bhk/polymat/matrix.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace bhk {

// ---- conversions and pointwise helpers -------------------------------------

RatMat to_ratmat(const PolyMat& m);
RatMat to_ratmat(const QMat& m);
/// Throws std::invalid_argument when an entry is not a polynomial.
PolyMat to_polymat(const RatMat& m);

/// M = num / den with den the monic lcm of all denominators.
struct ClearedMatrix {
    PolyMat num;
    Polynomial den;
};
ClearedMatrix clear_denominators(const RatMat& m);
/// Each row multiplied by the lcm of its own denominators; same row space.
PolyMat clear_row_denominators(const RatMat& m);

/// Entrywise circle adjoint, transposed: the boundary conjugate transpose.
RatMat circle_adjoint(const RatMat& m);
void require_no_circle_poles(const RatMat& m);
/// Every entry has its poles in |z| > 1.
bool is_analytic(const RatMat& m);

QMat evaluate(const RatMat& m, const GaussianRational& x);
QMat evaluate(const PolyMat& m, const GaussianRational& x);
Eigen::MatrixXcd evaluate(const RatMat& m, std::complex<double> x);
Eigen::MatrixXcd to_eigen(const QMat& m);
QMat conj_transpose(const QMat& m);

// ---- constant matrices ------------------------------------------------------

/// Reduced row echelon form; pivot columns written to *pivots when given.
QMat rref(const QMat& m, std::vector<std::size_t>* pivots = nullptr);
int rank(const QMat& m);
/// Right null space, one column per free variable of the reduced echelon form.
QMat nullspace(const QMat& m);
GaussianRational det(const QMat& m);

// ---- polynomial and rational matrices ---------------------------------------

/// Rank over the rational-function field (fraction-free elimination).
int generic_rank(const PolyMat& m);
int generic_rank(const RatMat& m);

Polynomial det(const PolyMat& m);
RationalFunction det(const RatMat& m);

/// adj(M) with M adj(M) = adj(M) M = det(M) I.
RatMat classical_adjoint(const RatMat& m);
PolyMat classical_adjoint(const PolyMat& m);
/// Empty when det M = 0.
std::optional<RatMat> inverse(const RatMat& m);

/// Greedy maximal set of rows that are independent over the function field.
std::vector<std::size_t> independent_rows(const RatMat& m);
std::vector<std::size_t> independent_columns(const RatMat& m);

/// X with A X = B for A of full column rank; empty when no solution exists.
std::optional<RatMat> solve(const RatMat& a, const RatMat& b);

/// gcd of all maximal (min(rows, cols)) minors; zero when the rank is deficient.
Polynomial maximal_minors_gcd(const PolyMat& m);

// ---- normal forms and kernels -----------------------------------------------

/// D U = H with U unimodular, H in column echelon form: the first `rank`
/// columns carry the pivots, the remaining columns are zero.
struct ColumnEchelon {
    PolyMat reduced;
    PolyMat transform;
    std::size_t rank = 0;
};
ColumnEchelon column_echelon(const PolyMat& d);

/// Maximal degree in each column (Polynomial::kZeroDegree for a zero column).
std::vector<int> column_degrees(const PolyMat& m);

/// Unimodular column operations until the highest-degree coefficient matrix
/// has full column rank. Columns are scaled so the first entry of top degree
/// has leading coefficient 1 and are ordered by degree (stable).
PolyMat column_reduce(const PolyMat& m);

/// Polynomial basis of {f : D f = 0}, saturated and column reduced.
PolyMat hermite_kernel_basis(const PolyMat& d);
/// Rows spanning {g : g M = 0}, saturated and row reduced.
PolyMat left_kernel_basis(const PolyMat& m);

/// G with {f in C[z]^m : B f = 0 mod p} = G C[z]^m, plus certificates.
struct InterpolationBasis {
    PolyMat basis;        ///< G, square, column reduced
    PolyMat cofactor;     ///< H with p I = G H
    int codimension = 0;  ///< dim C[z]^m / G C[z]^m from an independent count
};
InterpolationBasis interpolation_module_basis(const PolyMat& b, const Polynomial& p);

} // namespace bhk
