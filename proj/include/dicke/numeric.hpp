#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace dicke::num {

/// Tolerance and effort knobs threaded through every numeric routine.
/// All epsilons are applied relative to the magnitude of the data they test.
struct NumericContext {
    double eps_psd = 1e-8;    // PSD slack: accept lambda_min >= -eps*max(1,|M|)
    double eps_feas = 1e-8;   // projection feasibility residual target
    double eps_lp = 1e-9;     // simplex pivot and certificate tolerance
    double eps_coeff = 1e-12; // slack for exact coefficient identities
    int max_iter = 5000;      // alternating-projection iteration cap
    int restarts = 32;        // multi-start budget for heuristics
    int grid_depth = 6;       // simplex-grid refinement depth
    std::uint64_t seed = 20260823u;
};

/// Dense real symmetric matrix, stored full row-major.
class DenseSym {
  public:
    DenseSym() = default;
    explicit DenseSym(std::size_t m) : m_(m), a_(m * m, 0.0) {}
    /// Builds from a full row-major array; asymmetry beyond
    /// 1e-12 * max(1, |A|_max) is rejected, smaller asymmetry is averaged out.
    DenseSym(std::size_t m, std::vector<double> entries);

    static DenseSym identity(std::size_t m);

    std::size_t size() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * m_ + j]; }
    /// Sets both (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, double v);
    void add(std::size_t i, std::size_t j, double v);

    const std::vector<double>& data() const { return a_; }
    double frob_norm() const;
    double max_abs() const;

  private:
    std::size_t m_ = 0;
    std::vector<double> a_;
};

/// Eigendecomposition result; eigenvalues ascending, eigenvectors[k] is the
/// unit eigenvector matching eigenvalues[k].
struct EigResult {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;
};

/// Cyclic Jacobi (plane rotations).  Residual |MV - V Lambda|_F stays below
/// 1e-9 |M|_F and V is orthonormal to 1e-10.
EigResult sym_eig(const DenseSym& M);

struct PsdResult {
    bool psd = false;
    double min_eigenvalue = 0.0;
    std::vector<double> min_eigenvector;  // falsification certificate when !psd
};

/// True iff lambda_min >= -eps * max(1, |M|_max).
PsdResult psd_check(const DenseSym& M, double eps);

/// Projects onto the PSD cone by clipping negative eigenvalues at zero.
DenseSym psd_project(const DenseSym& M);

// ---------------------------------------------------------------------------
// Feasibility engine: affine subspace intersected with a product of cones.
// ---------------------------------------------------------------------------

/// One factor of the product cone.  A psd factor holds an m x m symmetric
/// matrix flattened row-major (dim = msize^2); nonneg/free hold plain vectors.
struct ConeBlock {
    enum class Kind { free_block, nonneg, psd };
    Kind kind = Kind::free_block;
    std::size_t dim = 0;
    std::size_t msize = 0;  // only for psd

    static ConeBlock free_of(std::size_t dim);
    static ConeBlock nonneg_of(std::size_t dim);
    static ConeBlock psd_of(std::size_t msize);
};

/// Sparse affine row over the concatenated block variables: sum c_i x_i = rhs.
struct AffineConstraint {
    std::vector<std::pair<std::size_t, double>> terms;
    double rhs = 0.0;

    void add_term(std::size_t index, double coeff);
};

struct FeasibilityVerdict {
    enum class Status { feasible, infeasible, inconclusive };
    Status status = Status::inconclusive;
    std::vector<double> point;        // feasible: concatenated block variables
    std::vector<double> certificate;  // infeasible: one multiplier per constraint
    int iterations = 0;
    double affine_residual = 0.0;  // max |<c_k,x> - rhs_k| at the reported point
    double cone_residual = 0.0;    // worst cone violation at the reported point
};

/// Dykstra-corrected alternating projections between the affine subspace and
/// the product cone.  Feasible when an iterate satisfies both sets within the
/// context tolerances; infeasible when a separating functional is found and
/// independently verified; inconclusive otherwise.
FeasibilityVerdict product_cone_feasibility(const std::vector<ConeBlock>& blocks,
                                            const std::vector<AffineConstraint>& constraints,
                                            const NumericContext& ctx);

/// Checks an infeasibility certificate w (one entry per constraint) without
/// rerunning the solver: g = sum_k w_k c_k must lie in the dual cone within
/// tol and sum_k w_k rhs_k must be < -tol.
bool verify_infeasibility_certificate(const std::vector<ConeBlock>& blocks,
                                      const std::vector<AffineConstraint>& constraints,
                                      const std::vector<double>& w, double tol);

/// Spec shape: one m x m PSD unknown G under trace constraints <A_k, G> = b_k.
FeasibilityVerdict affine_psd_feasibility(std::size_t m,
                                          const std::vector<std::pair<DenseSym, double>>& constraints,
                                          const NumericContext& ctx);

// ---------------------------------------------------------------------------
// LP feasibility: A x = b, x >= 0.
// ---------------------------------------------------------------------------

struct LpResult {
    enum class Status { feasible, infeasible };
    Status status = Status::feasible;
    std::vector<double> x;       // feasible point, x >= 0, Ax = b
    std::vector<double> farkas;  // infeasible: y with yT A <= 0, yT b > 0
    int iterations = 0;
};

/// Phase-1 simplex with Bland's rule (deterministic, cycle-free).  A is dense
/// row-major rows x cols.
LpResult lp_feasibility(std::size_t rows, std::size_t cols,
                        const std::vector<double>& A, const std::vector<double>& b,
                        double eps_lp);

/// Independent Farkas check: yT A <= tol componentwise and yT b > tol.
bool verify_farkas_ray(std::size_t rows, std::size_t cols,
                       const std::vector<double>& A, const std::vector<double>& b,
                       const std::vector<double>& y, double tol);

/// Deterministic per-stream RNG seed derivation (splitmix64 over seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace dicke::num
