#pragma once

#include <optional>
#include <string>

#include "dicke/dsmatrix.hpp"
#include "dicke/symtensor.hpp"

namespace dicke {

/// A copositivity-based entanglement witness in W-parametrization, together
/// with its known flags.  Flags are set only by constructors that carry an
/// exact criterion for them (sign analysis, closed forms, or preservation
/// arguments); absent knowledge stays absent.
struct Witness {
    SymTensor tensor;
    std::string provenance;
    bool copositive = false;
    std::optional<bool> sos;

    Witness() : tensor(0, 1) {}
    explicit Witness(SymTensor t) : tensor(std::move(t)) {}
};

/// The degree-3 Motzkin form x^2 y + x y^2 + z^3 - 3xyz (copositive, not a
/// sum of squares).
Witness motzkin();

/// The degree-3 Robinson form sum_i x_i^3 - sum_{i != j} x_i^2 x_j
/// + 3 x_1 x_2 x_3, generated from the (3, -5/2, 1/2) family member and
/// cross-checked against its occupation values.
Witness robinson();

struct ChoiLamFlags {
    bool copositive = false;
    bool sos = false;
};

/// Exact sign analysis for a*M3 + b*M1*M2 + c*M1^3 via the quadratic
/// p*(t) = a + b t + c t^2: copositive iff p* >= 0 on the integers 1..d,
/// sum of squares iff p* >= 0 on {1} union [2, d].  Requires d >= 2.
ChoiLamFlags choi_lam_flags(double a, double b, double c, int d);

/// The family member a*M3 + b*M1*M2 + c*M1^3 over d variables with its flags.
Witness choi_lam(double a, double b, double c, int d);

/// Largest mu for which the projective witness at alpha stays copositive:
/// 1 / (multinomial(n, alpha) * prod_l (alpha_l / n)^alpha_l).
double critical_mu(const Occupation& alpha);

/// W constant 1 with a dip 1 - mu at alpha; copositive iff mu <= critical_mu.
Witness projective_witness(const Occupation& alpha, double mu);

/// Multiplies p_W by x_var (0-based var in [0, dim)); order grows by one.
/// Both flags carry over: copositivity because x_var >= 0 on the orthant,
/// the sum-of-squares flag because x^2 p is sos exactly when p is.
Witness lift_witness(const Witness& w, int var);

struct DetectResult {
    double pairing = 0.0;
    bool entangled = false;  // pairing < -eps, certified by the witness
};

/// Pairs the state against the witness: euclid_inner(q_view(X), W).  A value
/// below -eps certifies entanglement; otherwise no conclusion.  Throws
/// std::invalid_argument when the witness is not flagged copositive.
DetectResult detect(const DsMatrix& X, const Witness& w, double eps = 1e-8);

/// Optimal 3-qutrit state of the two-parameter family detected by the
/// Robinson witness: minimizes 3p + 3r - 6q over p >= q >= r >= 0,
/// p(q + r) >= 2 q^2, 3p + 18q + 6r = 1 (grid search plus coordinate
/// descent).  The optimum is PPT (order-1 moment member) yet entangled.
struct Qutrit3Result {
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
    double eta = 0.0;
    DsMatrix state{3, 3};
};

Qutrit3Result qutrit3_search();

}  // namespace dicke
