#pragma once

#include "bhk/nmod/nspan.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bhk {

/// Theta H^2 for an n x m inner Theta; Theta is unique up to a constant right unitary.
struct ShiftInvariantSubspace {
    MatrixInner inner;
    std::vector<std::string> provenance;
};

/// H^2 minus Theta H^2. dim is set only when Theta is square.
struct ModelSubspace {
    MatrixInner inner;
    std::optional<int> dim;
    std::vector<std::string> provenance;

    std::string dimension_text() const;
};

enum class LatticeOp { Gcd, Lcm };

/// What a gcd/lcm call saw and produced; input to size_bound_audit.
struct LatticeTrace {
    LatticeOp op = LatticeOp::Gcd;
    std::size_t n = 0;
    std::vector<std::size_t> input_cols;
    std::vector<bool> input_square;
    std::size_t result_cols = 0;
    std::vector<std::string> paths;          ///< "hankel", "direct", "concatenation"
    std::optional<bool> paths_agree;         ///< set when two paths were run
    std::optional<int> stacked_independency; ///< independency of the stacked symbol (hankel path)
};

struct GcdResult {
    MatrixInner inner;
    std::vector<RatMat> quotients;  ///< X_i with V_i = V X_i, analytic
    LatticeTrace trace;
};

struct LcmResult {
    MatrixInner inner;
    LatticeTrace trace;
};

/// Smallest shift-invariant subspace containing the columns.
/// Throws std::invalid_argument when the list is empty or every generator is zero.
ShiftInvariantSubspace shift_invariant_from_generators(const std::vector<RatMat>& generators);

/// Inner factor of [Theta_1 ... Theta_r]; each Theta_i factors through it.
GcdResult gcd_inner(const std::vector<MatrixInner>& thetas);

/// Inner function of the intersection of the ranges. Uses stacked symbols when
/// every Theta_i is square or a single column, and a direct intersection of the
/// ranges otherwise; both are run and compared when both apply.
LcmResult lcm_inner(const std::vector<MatrixInner>& thetas);

/// Intersection of the kernels of the given symbols, with the stacked independency.
LcmResult lcm_from_symbols(const std::vector<NSpanMatrix>& symbols);

/// Smallest backward-shift-invariant subspace containing the columns.
ModelSubspace sstar_invariant_from_generators(const std::vector<RatMat>& generators);

/// Cyclicity of f for the backward shift, decided twice (model space size and
/// independency of the conjugate row); throws InvariantViolation on disagreement.
bool cyclic_test(const RatMat& f);
/// Same for a vector given by the N-span representation of its conjugate
/// coordinates (a 1 x n row).
bool cyclic_test_conjugates(const NSpanMatrix& conjugate_row);

struct AuditReport {
    long lower = 0;
    long upper = 0;
    bool within = false;
    std::vector<std::string> lines;
};

/// Re-derives the size bounds from the trace and checks the result size.
/// Throws InvariantViolation when the size lies outside the bounds.
AuditReport size_bound_audit(const LatticeTrace& trace);

} // namespace bhk
