#pragma once

#include <map>
#include <vector>

#include "dicke/combinat.hpp"
#include "dicke/symtensor.hpp"

namespace dicke {

/// Homogeneous polynomial in d variables: exponent vector -> coefficient.
/// Coefficients with |c| < 1e-14 are dropped after arithmetic so hierarchy
/// products keep tight supports.
class HomPoly {
  public:
    HomPoly(int d, int deg);

    int dim() const { return d_; }
    int degree() const { return deg_; }

    double coeff(const Occupation& exponent) const;
    void set_coeff(const Occupation& exponent, double value);
    void add_coeff(const Occupation& exponent, double value);

    const std::map<Occupation, double>& coeffs() const { return coeffs_; }

    double evaluate(const std::vector<double>& x) const;
    /// Gradient entry d p / d x_var at x.
    double partial(const std::vector<double>& x, int var) const;

  private:
    void check_key(const Occupation& exponent) const;

    int d_;
    int deg_;
    std::map<Occupation, double> coeffs_;
};

/// p_T(x) = sum_alpha multinomial(n,alpha) T_alpha x^alpha.
HomPoly poly_from_tensor(const SymTensor& T);

/// Inverse scaling: T_alpha = coeff(alpha) / multinomial(n,alpha).
SymTensor tensor_from_poly(const HomPoly& p);

HomPoly multiply(const HomPoly& p, const HomPoly& q);

/// (x_1 + ... + x_d)^r with multinomial coefficients.
HomPoly power_of_linear_sum(int d, int r);

/// (x_1^2 + ... + x_d^2)^r.
HomPoly norm_square_power(int d, int r);

/// p(x (.) x): doubles every exponent vector (degree doubles).
HomPoly substitute_squares(const HomPoly& p);

/// All lattice exponents beta of degree deg/2 with 2*beta inside the Newton
/// polytope of p; membership decided by an exact rational LP over the support.
/// Requires deg(p) even.
std::vector<Occupation> half_newton_basis(const HomPoly& p);

/// Exact convex-hull membership of the integer point target among the integer
/// points of `support` (shared by half_newton_basis and its tests).
bool in_convex_hull(const std::vector<Occupation>& support, const Occupation& target);

}  // namespace dicke
