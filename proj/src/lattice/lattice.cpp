#include "bhk/lattice/lattice.hpp"

#include "bhk/core/errors.hpp"
#include "bhk/hankel/kernel.hpp"
#include "bhk/inner/inner_outer.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bhk {

std::string ModelSubspace::dimension_text() const {
    if (dim) return std::to_string(*dim);
    return "infinite-dimensional";
}

namespace {

void require_common_rows(const std::vector<MatrixInner>& thetas, const char* op) {
    if (thetas.empty()) throw std::invalid_argument(std::string(op) + " of an empty family");
    for (const auto& t : thetas)
        if (t.rows() != thetas.front().rows()) throw std::invalid_argument(std::string(op) + ": row counts differ");
}

RatMat hstack_all(const std::vector<RatMat>& cols, std::size_t n) {
    RatMat f(n, 0);
    for (const auto& c : cols) f = hstack(f, c);
    return f;
}

LatticeTrace start_trace(LatticeOp op, const std::vector<MatrixInner>& thetas) {
    LatticeTrace t;
    t.op = op;
    t.n = thetas.front().rows();
    for (const auto& th : thetas) {
        t.input_cols.push_back(th.cols());
        t.input_square.push_back(th.is_square());
    }
    return t;
}

// theta H^2 = {f : constraints f = 0, symbol f analytic}, or nothing when no
// row selection gives a symbol with a rational pole split.
struct RangeDescription {
    RatMat constraints;
    RatMat symbol;
};

std::optional<RangeDescription> describe_range(const MatrixInner& theta) {
    const RatMat& v = theta.generator();
    const std::size_t n = v.rows(), m = v.cols();
    RatMat constraints(0, n);
    if (m < n) constraints = to_ratmat(left_kernel_basis(clear_denominators(v).num));

    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(m), true);
    do {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) rows.push_back(i);
        auto inv = inverse(v.select_rows(rows));
        if (!inv) continue;
        RatMat select(m, n);
        for (std::size_t k = 0; k < m; ++k) select(k, rows[k]) = RationalFunction(1);
        RatMat symbol = *inv * select;
        try {
            HankelSymbol probe(symbol);
        } catch (const DomainError&) {
            continue;
        }
        return RangeDescription{constraints, symbol};
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return std::nullopt;
}

MatrixInner lcm_direct(const std::vector<RangeDescription>& ranges, std::size_t n) {
    RatMat c(0, n), s(0, n);
    for (const auto& r : ranges) {
        c = vstack(c, r.constraints);
        s = vstack(s, r.symbol);
    }
    return constrained_kernel(c, s);
}

} // namespace

ShiftInvariantSubspace shift_invariant_from_generators(const std::vector<RatMat>& generators) {
    if (generators.empty()) throw std::invalid_argument("no generators");
    const std::size_t n = generators.front().rows();
    for (const auto& g : generators)
        if (g.rows() != n) throw std::invalid_argument("generators have different lengths");
    RatMat f = hstack_all(generators, n);
    if (f.is_zero()) throw std::invalid_argument("every generator is zero");
    InnerOuterResult io = inner_outer(f);
    ShiftInvariantSubspace out{io.theta, {}};
    out.provenance.push_back("generated by " + std::to_string(f.cols()) + " vectors in C^" + std::to_string(n));
    out.provenance.push_back("rank " + std::to_string(io.rank) + ", " + io.theta.describe());
    return out;
}

GcdResult gcd_inner(const std::vector<MatrixInner>& thetas) {
    require_common_rows(thetas, "gcd");
    const std::size_t n = thetas.front().rows();
    GcdResult out{thetas.front(), {}, start_trace(LatticeOp::Gcd, thetas)};
    out.trace.paths.push_back("concatenation");

    std::vector<RatMat> gens;
    for (const auto& t : thetas) gens.push_back(t.generator());
    RatMat f = hstack_all(gens, n);
    if (f.cols() == 0 || f.is_zero()) {
        out.inner = MatrixInner::empty(n);
        for (const auto& t : thetas) out.quotients.emplace_back(0, t.cols());
    } else {
        if (thetas.size() > 1) out.inner = inner_outer(f).theta;
        for (const auto& t : thetas) {
            if (t.cols() == 0) {
                out.quotients.emplace_back(out.inner.cols(), 0);
                continue;
            }
            auto x = solve(out.inner.generator(), t.generator());
            if (!x || !is_analytic(*x)) throw InvariantViolation("an input does not factor through the gcd");
            out.quotients.push_back(*x);
        }
    }
    out.trace.result_cols = out.inner.cols();
    return out;
}

LcmResult lcm_from_symbols(const std::vector<NSpanMatrix>& symbols) {
    if (symbols.empty()) throw std::invalid_argument("lcm of an empty family");
    const std::size_t n = symbols.front().cols();
    NSpanMatrix omega(0, n);
    LatticeTrace trace;
    trace.op = LatticeOp::Lcm;
    trace.n = n;
    for (const auto& s : symbols) {
        if (s.cols() != n) throw std::invalid_argument("symbols act on different spaces");
        const std::size_t m = n - static_cast<std::size_t>(independency(s));
        trace.input_cols.push_back(m);
        trace.input_square.push_back(m == n);
        omega = vstack(omega, s);
    }
    trace.paths.push_back("hankel");
    trace.stacked_independency = independency(omega);
    MatrixInner theta = kernel_symbolic(omega);
    trace.result_cols = theta.cols();
    return {theta, trace};
}

LcmResult lcm_inner(const std::vector<MatrixInner>& thetas) {
    require_common_rows(thetas, "lcm");
    const std::size_t n = thetas.front().rows();
    LatticeTrace trace = start_trace(LatticeOp::Lcm, thetas);

    const bool degenerate = std::any_of(thetas.begin(), thetas.end(), [](const MatrixInner& t) { return t.cols() == 0; });
    if (degenerate || thetas.size() == 1) {
        MatrixInner theta = degenerate ? MatrixInner::empty(n) : thetas.front();
        trace.paths.push_back("trivial");
        trace.result_cols = theta.cols();
        return {theta, trace};
    }

    std::optional<MatrixInner> via_symbols;
    const bool symbols_apply =
        std::all_of(thetas.begin(), thetas.end(), [](const MatrixInner& t) { return t.is_square() || t.cols() == 1; });
    if (symbols_apply) {
        AtomFactory atoms("u");
        std::vector<NSpanMatrix> symbols;
        try {
            for (const auto& t : thetas) symbols.push_back(symbol_for_inner(t, atoms));
            LcmResult r = lcm_from_symbols(symbols);
            via_symbols = r.inner;
            trace.stacked_independency = r.trace.stacked_independency;
            trace.paths.push_back("hankel");
        } catch (const DomainError&) {
            // no symbol over Q(i) for some input; the direct path decides
        }
    }

    std::optional<MatrixInner> via_ranges;
    std::vector<RangeDescription> ranges;
    for (const auto& t : thetas) {
        auto r = describe_range(t);
        if (!r) break;
        ranges.push_back(std::move(*r));
    }
    if (ranges.size() == thetas.size()) {
        via_ranges = lcm_direct(ranges, n);
        trace.paths.push_back("direct");
    }

    if (!via_symbols && !via_ranges) throw Unsupported("lcm: no symbol or range description over Q(i) for these inputs");
    if (via_symbols && via_ranges) {
        bool same = via_symbols->cols() == via_ranges->cols() &&
                    (via_symbols->cols() == 0 || equal_up_to_right_unitary(*via_symbols, *via_ranges).has_value());
        trace.paths_agree = same;
        if (!same) throw InvariantViolation("lcm paths disagree");
    }
    MatrixInner theta = via_symbols ? *via_symbols : *via_ranges;
    for (const auto& t : thetas)
        if (theta.cols() > 0 && !range_contains(t, theta.generator()))
            throw InvariantViolation("lcm column outside an input range");
    trace.result_cols = theta.cols();
    return {theta, trace};
}

ModelSubspace sstar_invariant_from_generators(const std::vector<RatMat>& generators) {
    if (generators.empty()) throw std::invalid_argument("no generators");
    const std::size_t n = generators.front().rows();
    for (const auto& g : generators) {
        if (g.rows() != n) throw std::invalid_argument("generators have different lengths");
        if (!is_analytic(g)) throw std::invalid_argument("generators must be analytic");
    }
    RatMat f = hstack_all(generators, n);
    RatMat symbol = RationalFunction::z_pow(-1) * circle_adjoint(f);
    KernelResult k = kernel_rational(HankelSymbol(symbol));
    ModelSubspace out{k.theta, k.theta.model_dimension(), {}};
    if (!k.theta.is_square()) out.dim.reset();
    out.provenance.push_back("complement of the kernel of zbar F*, F of size " + std::to_string(n) + "x" +
                             std::to_string(f.cols()));
    return out;
}

bool cyclic_test(const RatMat& f) {
    if (f.cols() != 1) throw std::invalid_argument("cyclic test takes a single column");
    const std::size_t n = f.rows();
    const bool by_model = sstar_invariant_from_generators({f}).inner.cols() == 0;
    const bool by_independency = independency(to_nspan(circle_adjoint(f))) == static_cast<int>(n);
    if (by_model != by_independency) throw InvariantViolation("cyclicity criteria disagree");
    return by_model;
}

bool cyclic_test_conjugates(const NSpanMatrix& conjugate_row) {
    if (conjugate_row.rows() != 1) throw std::invalid_argument("conjugates must form a single row");
    const std::size_t n = conjugate_row.cols();
    RatMat zbar(1, 1);
    zbar(0, 0) = RationalFunction::z_pow(-1);
    const bool by_kernel = kernel_symbolic(mul_left(zbar, conjugate_row)).cols() == 0;
    const bool by_independency = independency(conjugate_row) == static_cast<int>(n);
    if (by_kernel != by_independency) throw InvariantViolation("cyclicity criteria disagree");
    return by_kernel;
}

AuditReport size_bound_audit(const LatticeTrace& trace) {
    AuditReport rep;
    const long n = static_cast<long>(trace.n);
    const long l = static_cast<long>(trace.result_cols);
    const auto& ms = trace.input_cols;
    if (ms.empty()) throw std::invalid_argument("audit of an empty trace");
    const long r = static_cast<long>(ms.size());
    const long sum = std::accumulate(ms.begin(), ms.end(), 0L, [](long a, std::size_t m) { return a + static_cast<long>(m); });
    const long mx = static_cast<long>(*std::max_element(ms.begin(), ms.end()));
    const long mn = static_cast<long>(*std::min_element(ms.begin(), ms.end()));
    const bool any_square = std::find(trace.input_square.begin(), trace.input_square.end(), true) != trace.input_square.end();

    std::ostringstream head;
    head << (trace.op == LatticeOp::Gcd ? "gcd" : "lcm") << " of " << r << " inputs in C^" << n << ", sizes";
    for (auto m : ms) head << ' ' << n << 'x' << m;
    head << "; result " << n << 'x' << l;
    rep.lines.push_back(head.str());

    if (trace.op == LatticeOp::Gcd) {
        rep.lower = mx;
        rep.upper = std::min(sum, n);
        rep.lines.push_back("bounds: max m_i = " + std::to_string(mx) + " <= l <= min(sum m_i, n) = " + std::to_string(rep.upper));
        if (any_square) {
            rep.lines.push_back("a square input forces l = n = " + std::to_string(n));
            rep.lower = rep.upper = n;
        }
    } else {
        long deficit = 0;
        for (auto m : ms) deficit += n - static_cast<long>(m);
        rep.lower = std::max(0L, n - deficit);
        rep.upper = mn;
        rep.lines.push_back("bounds: n - sum(n - m_i) = " + std::to_string(n - deficit) + " <= l <= min m_i = " + std::to_string(mn));
        const long variant = n - r * (n - static_cast<long>(ms.front()));
        rep.lines.push_back("variant lower bound n - r(n - m_1) = " + std::to_string(variant) +
                            (variant == n - deficit ? " (same)" : " (differs; per-input sizes used)"));
        if (any_square && r == 2) rep.lines.push_back("a square input forces l = size of the other input");
        if (trace.stacked_independency) {
            const long predicted = n - *trace.stacked_independency;
            rep.lines.push_back("stacked symbol independency " + std::to_string(*trace.stacked_independency) +
                                ", predicted l = " + std::to_string(predicted));
            if (predicted != l) throw InvariantViolation("lcm size differs from n minus the stacked independency");
        }
    }
    if (trace.paths_agree) rep.lines.push_back(std::string("paths agree: ") + (*trace.paths_agree ? "true" : "false"));

    rep.within = rep.lower <= l && l <= rep.upper;
    rep.lines.push_back(std::string("within bounds: ") + (rep.within ? "true" : "false"));
    if (!rep.within) throw InvariantViolation("lattice result size " + std::to_string(l) + " outside [" +
                                              std::to_string(rep.lower) + ", " + std::to_string(rep.upper) + "]");
    return rep;
}

} // namespace bhk
