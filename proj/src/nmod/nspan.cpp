#include "bhk/nmod/nspan.hpp"

#include "bhk/core/circle.hpp"
#include "bhk/core/errors.hpp"
#include "bhk/core/roots.hpp"
#include "bhk/hankel/kernel.hpp"
#include "bhk/inner/inner_outer.hpp"

#include <random>
#include <sstream>

namespace bhk {

NSpanEntry::NSpanEntry(const Atom& a, const RationalFunction& coeff) {
    if (!coeff.is_zero()) atoms_[a] = coeff;
}

RationalFunction NSpanEntry::coefficient(const Atom& a) const {
    auto it = atoms_.find(a);
    return it == atoms_.end() ? RationalFunction() : it->second;
}

NSpanEntry& NSpanEntry::operator+=(const NSpanEntry& o) {
    rational_ += o.rational_;
    for (const auto& [a, c] : o.atoms_) {
        RationalFunction s = coefficient(a) + c;
        if (s.is_zero())
            atoms_.erase(a);
        else
            atoms_[a] = s;
    }
    return *this;
}

NSpanEntry& NSpanEntry::operator-=(const NSpanEntry& o) { return *this += -o; }

NSpanEntry NSpanEntry::operator-() const {
    NSpanEntry e = *this;
    e.scale(RationalFunction(-1));
    return e;
}

void NSpanEntry::scale(const RationalFunction& r) {
    rational_ *= r;
    if (r.is_zero()) {
        atoms_.clear();
        return;
    }
    for (auto& [a, c] : atoms_) c *= r;
}

NSpanEntry operator*(const NSpanEntry& a, const NSpanEntry& b) {
    if (!a.is_rational() && !b.is_rational()) throw DomainError("product of two atom terms leaves the N-span class");
    NSpanEntry out = a.is_rational() ? b : a;
    out.scale(a.is_rational() ? a.rational_ : b.rational_);
    return out;
}

std::string NSpanEntry::str() const {
    std::ostringstream os;
    bool first = true;
    if (!rational_.is_zero() || atoms_.empty()) {
        os << rational_.str();
        first = false;
    }
    for (const auto& [a, c] : atoms_) {
        if (!first) os << " + ";
        first = false;
        if (c == RationalFunction(1))
            os << a.id;
        else
            os << "(" << c.str() << ")*" << a.id;
    }
    return os.str();
}

NSpanMatrix to_nspan(const RatMat& m) { return m.map([](const RationalFunction& r) { return NSpanEntry(r); }); }

std::set<Atom> atoms_of(const NSpanMatrix& phi) {
    std::set<Atom> out;
    for (std::size_t i = 0; i < phi.rows(); ++i)
        for (std::size_t j = 0; j < phi.cols(); ++j)
            for (const auto& [a, c] : phi(i, j).atom_terms()) out.insert(a);
    return out;
}

RatMat rational_part(const NSpanMatrix& phi) { return phi.map([](const NSpanEntry& e) { return e.rational(); }); }

RatMat atom_coefficients(const NSpanMatrix& phi) {
    std::set<Atom> atoms = atoms_of(phi);
    RatMat c(atoms.size() * phi.rows(), phi.cols());
    std::size_t block = 0;
    for (const Atom& a : atoms) {
        for (std::size_t i = 0; i < phi.rows(); ++i)
            for (std::size_t j = 0; j < phi.cols(); ++j) c(block * phi.rows() + i, j) = phi(i, j).coefficient(a);
        ++block;
    }
    return c;
}

int independency(const NSpanMatrix& phi) {
    RatMat c = atom_coefficients(phi);
    if (c.rows() == 0) return 0;
    return generic_rank(c);
}

std::vector<std::size_t> maximal_independent_subset(const NSpanMatrix& phi) {
    RatMat c = atom_coefficients(phi);
    if (c.rows() == 0) return {};
    return independent_columns(c);
}

namespace {

std::string index_list(const std::vector<std::size_t>& idx) {
    std::string s = "{";
    for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? ", " : "") + std::to_string(idx[k] + 1);
    return s + "}";
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = k;
    return v;
}

} // namespace

std::vector<std::size_t> extend_independent(const NSpanMatrix& a, const NSpanMatrix& b) {
    if (a.cols() > 0 && b.cols() > 0 && a.rows() != b.rows()) throw std::invalid_argument("column sets of different height");
    if (independency(a) != static_cast<int>(a.cols()))
        throw std::invalid_argument("first set " + index_list(all_indices(a.cols())) + " is dependent");
    if (independency(b) != static_cast<int>(b.cols()))
        throw std::invalid_argument("second set " + index_list(all_indices(b.cols())) + " is dependent");
    if (a.cols() >= b.cols()) throw std::invalid_argument("first set must be smaller than the second");
    NSpanMatrix current = a;
    std::vector<std::size_t> picked;
    for (std::size_t j = 0; j < b.cols() && picked.size() < b.cols() - a.cols(); ++j) {
        NSpanMatrix trial = hstack(current, b.column(j));
        if (independency(trial) == static_cast<int>(trial.cols())) {
            current = trial;
            picked.push_back(j);
        }
    }
    if (picked.size() != b.cols() - a.cols()) throw InvariantViolation("exchange step failed to extend the set");
    return picked;
}

MatrixInner constrained_kernel(const RatMat& constraints, const RatMat& symbol) {
    const std::size_t m = symbol.cols();
    if (constraints.rows() > 0 && constraints.cols() != m) throw std::invalid_argument("constrained kernel: column mismatch");
    PolyMat v = constraints.rows() == 0 ? PolyMat::identity(m) : hermite_kernel_basis(clear_row_denominators(constraints));
    if (v.cols() == 0) return MatrixInner::empty(m);
    RatMat rv = to_ratmat(v);
    KernelResult inner = kernel_rational(HankelSymbol(symbol * rv));
    MatrixInner theta = inner_outer(rv * inner.theta.generator()).theta;

    const RatMat& g = theta.generator();
    if (constraints.rows() > 0 && !(constraints * g).is_zero()) throw InvariantViolation("kernel column violates a linear constraint");
    if (!is_analytic(symbol * g)) throw InvariantViolation("kernel column violates the rational membership");
    return theta;
}

MatrixInner kernel_symbolic(const NSpanMatrix& phi) {
    const std::size_t m = phi.cols();
    const int r = independency(phi);
    if (r == static_cast<int>(m)) return MatrixInner::empty(m);
    MatrixInner theta = constrained_kernel(atom_coefficients(phi), rational_part(phi));
    if (theta.cols() != m - static_cast<std::size_t>(r)) throw InvariantViolation("symbolic kernel has the wrong size");
    return theta;
}

namespace {

NSpanMatrix product(const NSpanMatrix& phi, const RatMat& a) { return phi * to_nspan(a); }

void require_relation(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation("independency relation failed: " + what);
}

} // namespace

NSpanMatrix mul_right(const NSpanMatrix& phi, const RatMat& a, RelationCheck check) {
    if (phi.cols() != a.rows()) throw std::invalid_argument("mul_right: dimension mismatch");
    NSpanMatrix psi = product(phi, a);
    if (check == RelationCheck::None) return psi;
    const int s = static_cast<int>(a.rows()), l = static_cast<int>(a.cols());
    const int rank_a = generic_rank(a);
    const int before = independency(phi), after = independency(psi);
    if (s <= l) {
        if (rank_a != s) throw std::invalid_argument("mul_right: A must have rank " + std::to_string(s) + " (det A = 0 for square A)");
        require_relation(before == after, std::to_string(before) + " vs " + std::to_string(after));
    } else {
        if (rank_a != l) throw std::invalid_argument("mul_right: A must have rank " + std::to_string(l));
        require_relation(before - (s - l) <= after && after <= before,
                         std::to_string(after) + " outside [" + std::to_string(before - (s - l)) + ", " + std::to_string(before) + "]");
    }
    return psi;
}

NSpanMatrix mul_left(const RatMat& a, const NSpanMatrix& phi, RelationCheck check) {
    if (a.cols() != phi.rows()) throw std::invalid_argument("mul_left: dimension mismatch");
    NSpanMatrix psi = to_nspan(a) * phi;
    if (check == RelationCheck::None) return psi;
    if (a.rows() < a.cols() || generic_rank(a) != static_cast<int>(a.cols()))
        throw std::invalid_argument("mul_left: A must have full column rank (det A = 0 for square A)");
    const int before = independency(phi), after = independency(psi);
    require_relation(before == after, std::to_string(before) + " vs " + std::to_string(after));
    return psi;
}

namespace {

bool usable_pivot(const RationalFunction& k) {
    if (k.is_zero() || circle_root(k.num())) return false;
    return k.num().degree() <= 0 || try_split_disk(k.num()).has_value();
}

void require_round_trip(const NSpanMatrix& phi, const MatrixInner& theta) {
    MatrixInner back = kernel_symbolic(phi);
    if (!equal_up_to_right_unitary(back, theta)) throw InvariantViolation("symbol round trip does not reproduce the inner function");
}

} // namespace

NSpanMatrix symbol_for_column_inner(const MatrixInner& theta, AtomFactory& atoms) {
    if (theta.cols() != 1) throw std::invalid_argument("symbol_for_column_inner needs a single column");
    const RatMat& v = theta.generator();
    const std::size_t n = v.rows();
    std::size_t pivot = n;
    for (std::size_t j = n; j-- > 0;)
        if (usable_pivot(v(j, 0))) {
            pivot = j;
            break;
        }
    if (pivot == n) throw Unsupported("every coordinate of the inner column vanishes on the circle or has irrational disk zeros");
    NSpanMatrix phi(1, n);
    NSpanEntry last(v(pivot, 0).inverse());
    for (std::size_t j = 0; j < n; ++j) {
        if (j == pivot) continue;
        Atom a = atoms.fresh();
        phi(0, j) = NSpanEntry(a);
        last -= NSpanEntry(a, v(j, 0) / v(pivot, 0));
    }
    phi(0, pivot) = last;
    require_round_trip(phi, theta);
    return phi;
}

NSpanMatrix symbol_for_inner(const MatrixInner& theta, AtomFactory& atoms) {
    if (theta.is_square()) {
        NSpanMatrix phi;
        if (theta.is_explicit()) {
            phi = to_nspan(circle_adjoint(theta.generator()));
        } else {
            auto inv = inverse(theta.generator());
            if (!inv) throw InvariantViolation("square inner generator is singular");
            phi = to_nspan(*inv);
        }
        require_round_trip(phi, theta);
        return phi;
    }
    if (theta.cols() == 1) return symbol_for_column_inner(theta, atoms);
    throw Unsupported("no symbol construction for a " + std::to_string(theta.rows()) + "x" + std::to_string(theta.cols()) +
                      " inner function with several columns");
}

CounterexampleReport iz_counterexample_check(int samples, unsigned seed) {
    CounterexampleReport rep;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-4, 4), den(1, 3);
    const RatMat iz = RationalFunction::z() * RatMat::identity(2);
    const MatrixInner iz_inner = MatrixInner::from_explicit(iz);
    const int iz_defect = *iz_inner.model_dimension();
    for (int t = 0; t < samples; ++t) {
        GaussianRational a1, a2;
        if (t == 0) {
            a1 = 1;
            a2 = 1;
        } else if (t == 1) {
            a1 = 1;
            a2 = -1;
        } else {
            while (a1.is_zero()) a1 = GaussianRational(Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng)));
            while (a2.is_zero()) a2 = GaussianRational(Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng)));
        }
        RationalFunction h1, h2;
        if (t == 1) {
            h1 = RationalFunction::z();
            h2 = RationalFunction::z().pow(2);
        } else if (t > 1) {
            h1 = Polynomial(std::vector<GaussianRational>{GaussianRational(coef(rng)), GaussianRational(coef(rng))});
            h2 = RationalFunction(1) / RationalFunction(Polynomial(std::vector<GaussianRational>{GaussianRational(5), GaussianRational(coef(rng))}));
        }
        RationalFunction zb = RationalFunction::z_pow(-1);
        RatMat phi{{RationalFunction(a1) * zb + h1, RationalFunction(a2) * zb + h2}};
        KernelResult k = kernel_rational(HankelSymbol(phi));
        bool contains = range_contains(k.theta, iz);
        bool strict = !range_contains(iz_inner, k.theta.generator());
        bool ok = k.defect_dim == 1 && iz_defect == 2 && contains && strict;
        std::ostringstream os;
        os << "alpha = (" << a1.str() << ", " << a2.str() << "), h = (" << h1.str() << ", " << h2.str()
           << "): kernel defect " << k.defect_dim << ", I_z defect " << iz_defect << ", contains I_z H^2 "
           << (contains ? "yes" : "no") << ", strictly " << (strict ? "yes" : "no");
        rep.lines.push_back(os.str());
        rep.holds = rep.holds && ok;
    }
    return rep;
}

} // namespace bhk
