#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dicke/numeric.hpp"
#include "dicke/symtensor.hpp"

namespace dicke {

/// Outcome of a primal-cone membership test.  Certificates are plain data so
/// callers (and the JSON layer) can re-verify them without the solver.
struct ConeVerdict {
    enum class Status { member, non_member, inconclusive };

    std::string cone;  // "NN", "Mom", "CP", "Sep2"
    int level = -1;    // flattening order k for Mom; -1 when not applicable
    Status status = Status::inconclusive;
    std::string details;

    // Falsification data (non_member): the offending occupation for NN, the
    // failing slice (bad_alpha, bad_j) plus eigenvector for Mom/Sep2.
    Occupation bad_alpha;
    int bad_j = -1;
    std::vector<double> eigvec;
    double min_value = 0.0;  // worst entry / eigenvalue encountered

    bool member() const { return status == Status::member; }
};

/// Entrywise nonnegativity in occupation coordinates.
/// member iff min_alpha T_alpha >= -eps (absolute tolerance).
ConeVerdict is_nn(const SymTensor& T, double eps = 1e-12);

/// Moment cone at flattening order k: T in NN and every effective moment
/// matrix of slice order j <= k is PSD (relative tolerance via psd_check).
/// Requires 0 <= k <= n/2.
ConeVerdict is_mom(const SymTensor& T, int k, double eps = 1e-8);

/// One nonnegative symmetric rank-one term w * v^(x)n of a CP certificate.
struct CpFactor {
    double weight = 0.0;
    std::vector<double> vec;  // entrywise >= 0, unit Euclidean norm
};

struct CpResult {
    ConeVerdict verdict;
    std::vector<CpFactor> factors;
    double residual = 0.0;  // |T - sum w v^n| / |T| in the weighted norm
};

/// One-sided completely-positive certification: greedy nonnegative rank-one
/// deflation with cyclic refinement and deterministic multi-restart.  Returns
/// member (with a reconstructing decomposition) or inconclusive -- never
/// non_member; falsification belongs to is_mom and the witness pairing.
/// max_rank <= 0 and restarts <= 0 select the defaults 2*sym_dim(n,d) and 32.
CpResult cp_decompose(const SymTensor& T, int max_rank = 0, int restarts = 0,
                      std::uint64_t seed = 20260823u);

/// Exact separability decision for d = 2: nonnegativity plus the two maximal
/// effective moment matrices (even/odd occupation ladders).  Throws when
/// d != 2.
ConeVerdict qubit_separability(const SymTensor& T, double eps = 1e-8);

struct SimplexMin {
    double value = 0.0;
    std::vector<double> argmin;  // on the probability simplex
};

/// Heuristic minimum of p_T over the probability simplex: a divisible-by-six
/// barycentric grid, grid_depth rounds of step-shrinking neighborhood
/// refinement, then projected descent with step halving.  A negative value
/// falsifies copositivity; a nonnegative value is evidence, not proof.
SimplexMin copositive_min(const SymTensor& T, int grid_depth = 6);

}  // namespace dicke
