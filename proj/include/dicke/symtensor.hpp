#pragma once

#include <map>
#include <vector>

#include "dicke/combinat.hpp"
#include "dicke/numeric.hpp"

namespace dicke {

/// Real symmetric order-n tensor over R^d in occupation coordinates: one
/// stored value per occupation vector, missing keys read as zero.  A dense
/// entry T_i equals value(occupation_of(i)); symmetry is structural.
class SymTensor {
  public:
    SymTensor(int n, int d);

    int order() const { return n_; }
    int dim() const { return d_; }

    double at(const Occupation& alpha) const;
    void set(const Occupation& alpha, double value);
    void add(const Occupation& alpha, double value);
    void scale(double factor);
    /// this += factor * other (same shape required).
    void add_scaled(const SymTensor& other, double factor);

    /// Occupation -> value map, ascending lexicographic, zeros pruned.
    const std::map<Occupation, double>& values() const { return values_; }

    double max_abs() const;

  private:
    void check_key(const Occupation& alpha) const;

    int n_;
    int d_;
    std::map<Occupation, double> values_;
};

/// Effective (occupation-labelled) moment matrix of a slice family: entry
/// (beta, beta') = T_{alpha + beta + beta'}; labels are all occupations of
/// order j in enumerate order.
struct FlatteningMatrix {
    Occupation alpha;
    int j = 0;
    std::vector<Occupation> labels;
    num::DenseSym matrix;
};

/// Symmetrization of a dense order-n array (size d^n, leg 1 most significant):
/// each occupation value is the average over its index orbit.
SymTensor from_dense(int n, int d, const std::vector<double>& dense);

/// values[alpha] = prod_j v_j^alpha_j, i.e. the tensor v^(x)n.
SymTensor rank_one(const std::vector<double>& v, int n);

/// Euclidean (dense-contraction) inner product:
/// sum_alpha multinomial(n,alpha) T_alpha S_alpha.
double euclid_inner(const SymTensor& T, const SymTensor& S);

/// sqrt(euclid_inner(T,T)): the dense Frobenius norm.
double weighted_norm(const SymTensor& T);

/// Contraction of r legs with ones: (tr_r T)_alpha =
/// sum_{|delta|=r} multinomial(r,delta) T_{alpha+delta}.  Order drops to n-r.
SymTensor marginal(const SymTensor& T, int r);

/// Requires |alpha| = n - 2j; rows/columns run over all |beta| = j.
FlatteningMatrix moment_matrix(const SymTensor& T, const Occupation& alpha, int j);

/// Symmetrized T (x) e^(x)r in occupation coordinates:
/// result_beta = sum_{delta<=beta, |delta|=r} multinomial(r,delta)
///               * multinomial(n,beta-delta) * T_{beta-delta}
///               / multinomial(n+r,beta).
/// The coefficient is validated against the dense symmetrization oracle in the
/// test suite.
SymTensor tensor_with_ones(const SymTensor& T, int r);

}  // namespace dicke
