#pragma once

#include "bhk/inner/matrix_inner.hpp"

#include <map>
#include <set>
#include <string>

namespace bhk {

/// A formal function independent modulo the Nevanlinna class. Atoms with
/// different ids are independent; that is the only property the model uses.
struct Atom {
    std::string id;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Per-call source of fresh atoms: prefix + counter, in creation order.
class AtomFactory {
public:
    explicit AtomFactory(std::string prefix = "u") : prefix_(std::move(prefix)) {}
    Atom fresh() { return Atom{prefix_ + std::to_string(++counter_)}; }
    int issued() const { return counter_; }

private:
    std::string prefix_;
    int counter_ = 0;
};

/// rational + sum_a coeff_a * a, with rational coefficients. Atoms are never
/// multiplied together.
class NSpanEntry {
public:
    NSpanEntry() = default;
    NSpanEntry(long c) : rational_(c) {}
    NSpanEntry(const RationalFunction& r) : rational_(r) {}
    NSpanEntry(const Atom& a, const RationalFunction& coeff = RationalFunction(1));

    const RationalFunction& rational() const { return rational_; }
    const std::map<Atom, RationalFunction>& atom_terms() const { return atoms_; }
    /// Coefficient of a (zero when absent).
    RationalFunction coefficient(const Atom& a) const;
    bool is_rational() const { return atoms_.empty(); }
    bool is_zero() const { return rational_.is_zero() && atoms_.empty(); }

    NSpanEntry& operator+=(const NSpanEntry& o);
    NSpanEntry& operator-=(const NSpanEntry& o);
    NSpanEntry operator-() const;
    friend NSpanEntry operator+(NSpanEntry a, const NSpanEntry& b) { return a += b; }
    friend NSpanEntry operator-(NSpanEntry a, const NSpanEntry& b) { return a -= b; }
    /// Throws DomainError when both factors carry atoms.
    friend NSpanEntry operator*(const NSpanEntry& a, const NSpanEntry& b);
    friend bool operator==(const NSpanEntry& a, const NSpanEntry& b) {
        return a.rational_ == b.rational_ && a.atoms_ == b.atoms_;
    }

    std::string str() const;

private:
    void scale(const RationalFunction& r);
    RationalFunction rational_;
    std::map<Atom, RationalFunction> atoms_;
};

using NSpanMatrix = Matrix<NSpanEntry>;

NSpanMatrix to_nspan(const RatMat& m);
std::set<Atom> atoms_of(const NSpanMatrix& phi);
RatMat rational_part(const NSpanMatrix& phi);
/// Rows indexed by (row i, atom) in (atom-major, then row) order; columns as phi.
RatMat atom_coefficients(const NSpanMatrix& phi);

/// Number of columns in a maximal independent set modulo the Nevanlinna class.
int independency(const NSpanMatrix& phi);
/// Greedy by index; its size is independency(phi).
std::vector<std::size_t> maximal_independent_subset(const NSpanMatrix& phi);
/// Indices into b of |b| - |a| columns whose union with a is independent.
/// Throws std::invalid_argument when a or b is dependent or |a| >= |b|.
std::vector<std::size_t> extend_independent(const NSpanMatrix& a, const NSpanMatrix& b);

/// Inner theta with theta H^2 = {f in H^2 : constraints f = 0, symbol f analytic}.
/// The constraint rows are rational; an empty constraint matrix imposes nothing.
MatrixInner constrained_kernel(const RatMat& constraints, const RatMat& symbol);

/// Inner theta with ker H_phi = theta H^2 (m x (m - independency)); certified
/// by the atom constraints and the rational membership on every column.
MatrixInner kernel_symbolic(const NSpanMatrix& phi);

enum class RelationCheck { None, Assert };

/// phi A. With Assert: equality of independency for square nonsingular A or for
/// s <= l with Rank A = s; the two-sided bound for s >= l with Rank A = l.
/// Throws std::invalid_argument when the rank precondition fails, InvariantViolation
/// when the relation does not hold.
NSpanMatrix mul_right(const NSpanMatrix& phi, const RatMat& a, RelationCheck check = RelationCheck::None);
/// A phi. With Assert: equality for l >= m with Rank A = m.
NSpanMatrix mul_left(const RatMat& a, const NSpanMatrix& phi, RelationCheck check = RelationCheck::None);

/// 1 x n symbol whose Hankel kernel is theta H^2, for a single inner column.
/// Fresh atoms come from the factory. Round trip verified.
NSpanMatrix symbol_for_column_inner(const MatrixInner& theta, AtomFactory& atoms);
/// Square theta: the rational symbol theta* (or V^{-1} for a generator form);
/// one column: symbol_for_column_inner. Other shapes throw Unsupported.
NSpanMatrix symbol_for_inner(const MatrixInner& theta, AtomFactory& atoms);

struct CounterexampleReport {
    bool holds = true;
    std::vector<std::string> lines;
};
/// For sampled first-order two-column symbols, the kernel strictly contains I_z H^2.
CounterexampleReport iz_counterexample_check(int samples = 6, unsigned seed = 7);

} // namespace bhk
