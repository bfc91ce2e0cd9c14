#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dicke/dsmatrix.hpp"
#include "dicke/numeric.hpp"
#include "dicke/soscone.hpp"
#include "dicke/symtensor.hpp"

namespace dicke {

/// Verdict of one level of an approximation hierarchy.  Inner families (rsos,
/// pnn) certify copositivity from below; outer extension families (nn_ext,
/// mom_ext) relax complete positivity from above, so for them member means
/// "an extension exists" and non_member means "provably none".
struct HierarchyVerdict {
    enum class Family { rsos, pnn, nn_ext, mom_ext };
    enum class Status { member, non_member, inconclusive };

    Family family = Family::rsos;
    int level = 0;
    Status status = Status::inconclusive;
    std::string details;

    /// rsos: the underlying sum-of-squares verdict (Gram / obstruction).
    std::optional<SosVerdict> sos;

    /// pnn non_member: the most negative expanded coefficient and its monomial.
    Occupation bad_monomial;
    double bad_coefficient = 0.0;

    /// nn_ext / mom_ext member: extension tensor of order n + level whose
    /// r-fold marginal reproduces the input to 1e-9.
    std::optional<SymTensor> extension;

    /// nn_ext non_member: independently verified Farkas ray, one entry per
    /// marginal equation.  mom_ext non_member: verified separating functional.
    std::vector<double> dual_ray;

    bool member() const { return status == Status::member; }
    bool feasible() const { return member(); }
};

/// Level-r inner sum-of-squares test: T is a member iff the symmetrized
/// tensor product of T with r all-ones legs is a sum of squares (equivalently
/// p_T(x*x) times |x|^{2r} is a sum of squares).  Requires r >= 0.
HierarchyVerdict rsos_member(const SymTensor& T, int r,
                             const num::NumericContext& ctx = {});

/// Level-r inner nonnegativity test: T is a member iff every coefficient of
/// p_T(y) * (y_1 + ... + y_d)^r is >= -1e-12.  Requires r >= 0.
HierarchyVerdict pnn_member(const SymTensor& T, int r);

/// Level-r outer relaxation of complete positivity by nonnegative extension:
/// feasible iff some entrywise-nonnegative tensor t of order n + r has
/// marginal(t, r) = Q.  Infeasibility ships a verified Farkas ray.
/// Requires r >= 0 and Q entrywise nonnegative (else trivially infeasible).
HierarchyVerdict nn_ext_feasible(const SymTensor& Q, int r,
                                 const num::NumericContext& ctx = {});

/// Level-r outer relaxation by moment extension: feasible iff some tensor t
/// of order n + r has marginal(t, r) = Q, t >= 0, and every effective moment
/// matrix of t PSD up to slice order floor((n+r)/2).  Alternating projections
/// cannot prove infeasibility in general, so inconclusive is a real outcome.
HierarchyVerdict mom_ext_feasible(const SymTensor& Q, int r,
                                  const num::NumericContext& ctx = {});

/// Bosonic r-extendibility of a Dicke-diagonal state, with (ppt = true) or
/// without the positive-partial-transpose strengthening.  Delegates to the
/// extension hierarchies on the Q tensor; a feasible extension converts back
/// to a state via lambda_from_q whose r-leg partial trace equals X.
HierarchyVerdict ds_extendibility(const DsMatrix& X, int r, bool ppt,
                                  const num::NumericContext& ctx = {});

/// Extendibility-witness test for an observable O: O blocks all r-extendible
/// states iff w_view(O) passes pnn_member at level r, and all PPT r-extendible
/// states iff w_view(O) passes rsos_member (decomposable = true).
HierarchyVerdict ext_witness_check(const DsMatrix& O, int r, bool decomposable,
                                   const num::NumericContext& ctx = {});

}  // namespace dicke
