#pragma once

#include <map>
#include <vector>

#include "dicke/combinat.hpp"
#include "dicke/numeric.hpp"
#include "dicke/symtensor.hpp"

namespace dicke {

/// Mixture of Dicke states: a Hermitian matrix diagonal in the Dicke basis,
/// determined by its spectrum lambda indexed by occupations.  lambda is the
/// single source of truth; the Q and W tensors are computed views.
class DsMatrix {
  public:
    DsMatrix(int n, int d);

    int order() const { return n_; }
    int dim() const { return d_; }

    double lambda(const Occupation& alpha) const;
    void set_lambda(const Occupation& alpha, double value);

    const std::map<Occupation, double>& lambdas() const { return lambda_; }

    double trace() const;
    /// Number of nonzero Dicke eigenvalues (|lambda| > tol).
    int rank(double tol = 0.0) const;
    bool is_psd(double tol = 0.0) const;

  private:
    int n_;
    int d_;
    std::map<Occupation, double> lambda_;
};

/// Q tensor of diagonal entries: Q_alpha = lambda_alpha / multinomial(n,alpha).
SymTensor q_view(const DsMatrix& X);

/// Inverse of q_view: lambda_alpha = multinomial(n,alpha) * Q_alpha.
DsMatrix lambda_from_q(const SymTensor& Q);

/// W tensor: W_alpha = lambda_alpha (the multinomial-weighted Q).
SymTensor w_view(const DsMatrix& X);

/// Hilbert-Schmidt inner product: sum_alpha lambda(X)_alpha lambda(Y)_alpha,
/// computed as euclid_inner(q_view(X), w_view(Y)).
double hs_inner(const DsMatrix& X, const DsMatrix& Y);

/// Dense d^n x d^n matrix sum_alpha lambda_alpha |D_alpha><D_alpha| (real in
/// the computational basis); entry (i,j) = Q_{gamma(i)} when gamma(i) =
/// gamma(j), else 0.  Oracle-grade export; index legs big-endian.
num::DenseSym to_dense(const DsMatrix& X);

/// Projector onto a single Dicke state: lambda = indicator at alpha.
DsMatrix pure_dicke(const Occupation& alpha);

/// Partial trace of X over r legs, computed in occupation coordinates.
DsMatrix ds_marginal(const DsMatrix& X, int r);

/// Closed-form Q tensor of the r-leg partial trace of |D_alpha><D_alpha|:
/// Q_beta = multinomial(r, alpha-beta) / multinomial(n, alpha) when beta <=
/// alpha entrywise, else 0.  Requires 0 <= r < n.
SymTensor dicke_marginal_closed_form(const Occupation& alpha, int r);

/// Two-body negative-partial-transpose witness for a pure Dicke state.
struct NptVerdict {
    bool npt = false;
    int l = -1;
    int m = -1;
    double gap = 0.0;  // Q_lm^2 - Q_ll Q_mm on the 2-body marginal
};

/// True with a witnessing level pair whenever alpha has at least two occupied
/// levels; false (product state, separable) otherwise.
NptVerdict npt_2body(const Occupation& alpha);

/// Uniform mixture over the S_d-orbit of the partition mu: lambda = 1/|orbit|
/// on each permuted occupation.
DsMatrix sd_orbit_state(const Occupation& mu);

/// Averages lambda over each S_d-orbit; idempotent.
DsMatrix sd_symmetrize(const DsMatrix& X);

/// Orbit weights p_mu of an S_d-invariant state, keyed by the nonincreasing
/// representative.  Rejects inputs whose lambda varies within an orbit by
/// more than tol.
std::map<Occupation, double> sd_coordinates(const DsMatrix& X, double tol = 1e-12);

}  // namespace dicke
