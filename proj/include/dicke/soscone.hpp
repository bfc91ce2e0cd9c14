#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dicke/combinat.hpp"
#include "dicke/numeric.hpp"
#include "dicke/polynomial.hpp"
#include "dicke/symtensor.hpp"

namespace dicke {

/// Exact combinatorial non-SOS certificate: a monomial with negative
/// coefficient whose only representation as a sum of two half-Newton-basis
/// points is the doubled point half + half.  In any sum-of-squares
/// decomposition that coefficient would equal a sum of squared Gram entries,
/// so a negative value is a contradiction.
struct SosObstruction {
    Occupation monomial;  // offending exponent vector (all entries even)
    double coefficient = 0.0;
    Occupation half;  // monomial / 2, the only candidate basis point
};

/// Exact sign record for the symmetric cubic family a*M3 + b*M1*M2 + c*M1^3
/// (M_r = sum_i x_i^r).  The family polynomial evaluated at t coordinates set
/// to one equals t * pstar(t) with pstar(t) = a + b t + c t^2; membership
/// questions reduce to the sign of pstar on {1} union [2, d] (SOS) or on the
/// integers 1..d (copositivity).  `t` is the minimizing point on the set the
/// record was computed for and `value` = pstar(t).
struct PstarRecord {
    double a = 0.0, b = 0.0, c = 0.0;
    double t = 0.0;
    double value = 0.0;
};

/// Minimum of pstar over the reals {1} union [2, d] (decides SOS for the
/// cubic family) and over the integers {1, ..., d} (decides copositivity).
PstarRecord pstar_min_reals(double a, double b, double c, int d);
PstarRecord pstar_min_integers(double a, double b, double c, int d);

/// One certificate block.  The plain SOS test emits a single block with
/// j = -1 holding the full Gram matrix over `labels`.  Structured level-l
/// membership emits one block per summand y^alpha psi(y): j = 0 blocks are
/// the 1x1 nonnegative scalars, j >= 1 blocks are the Gram matrices of the
/// degree-2j SOS cofactors psi.
struct GramBlock {
    int j = -1;
    Occupation alpha;                // empty for the plain SOS block
    std::vector<Occupation> labels;  // monomial basis indexing the Gram matrix
    num::DenseSym gram;
};

struct SosVerdict {
    enum class Status { sos, not_sos, inconclusive };

    Status status = Status::inconclusive;
    int level = -1;  // structured level, or -1 for the plain SOS test
    std::vector<Occupation> basis;  // Gram monomial basis of the plain test
    std::vector<GramBlock> blocks;  // PSD certificates when status == sos
    std::optional<SosObstruction> obstruction;  // exact non-SOS certificate
    std::optional<PstarRecord> pstar;           // cubic-family sign record
    std::string details;

    bool sos() const { return status == Status::sos; }
};

/// Is p_T(x (.) x) a sum of squares?  Pipeline: strip common monomial factors
/// (exact), decide the symmetric cubic family by the pstar criterion (exact),
/// look for a Newton-support obstruction (exact), and only then hand the Gram
/// system over the half-Newton basis to the affine PSD feasibility engine.
/// Exact negative certificates are authoritative; the numeric stage can also
/// return a verified infeasibility, otherwise inconclusive.
SosVerdict is_sos_tensor(const SymTensor& T, const num::NumericContext& ctx = {});

/// Exact Newton-support obstruction search on an even-degree polynomial.
/// Returns the first (lexicographically) negative-coefficient monomial all of
/// whose entries are even and which no pair of distinct half-Newton-basis
/// points can represent.  Throws std::invalid_argument on odd degree.
std::optional<SosObstruction> newton_obstruction(const HomPoly& p);

/// Level-l structured membership: does p_T(y) decompose as
///   sum_{j <= l} sum_{|alpha| = n-2j} y^alpha psi_{j,alpha}(y)
/// with every psi_{j,alpha} a sum of squares?  l = 0 is entrywise
/// nonnegativity; larger l gives a nested family of cones inside the SOS
/// tensors.  Throws std::invalid_argument unless 0 <= 2l <= n.
SosVerdict structured_sos_level(const SymTensor& T, int l,
                                const num::NumericContext& ctx = {});

}  // namespace dicke
