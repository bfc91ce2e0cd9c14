#include "dicke/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dicke/cones.hpp"
#include "dicke/polynomial.hpp"

namespace dicke {

namespace {

void require_level(int r) {
    if (r < 0) throw std::invalid_argument("hierarchy level must be nonnegative");
}

std::map<Occupation, std::size_t> index_of(const std::vector<Occupation>& occs) {
    std::map<Occupation, std::size_t> idx;
    for (std::size_t i = 0; i < occs.size(); ++i) idx.emplace(occs[i], i);
    return idx;
}

Occupation plus(const Occupation& a, const Occupation& b) {
    Occupation s = a;
    for (std::size_t l = 0; l < s.size(); ++l) s[l] += b[l];
    return s;
}

/// Max |marginal(E, r) - Q| over occupation entries.
double marginal_gap(const SymTensor& E, int r, const SymTensor& Q) {
    SymTensor M = marginal(E, r);
    double worst = 0.0;
    for (const Occupation& a : enumerate_occupations(Q.order(), Q.dim())) {
        worst = std::max(worst, std::abs(M.at(a) - Q.at(a)));
    }
    return worst;
}

}  // namespace

HierarchyVerdict rsos_member(const SymTensor& T, int r, const num::NumericContext& ctx) {
    require_level(r);
    HierarchyVerdict v;
    v.family = HierarchyVerdict::Family::rsos;
    v.level = r;
    SosVerdict sos = is_sos_tensor(tensor_with_ones(T, r), ctx);
    switch (sos.status) {
        case SosVerdict::Status::sos:
            v.status = HierarchyVerdict::Status::member;
            break;
        case SosVerdict::Status::not_sos:
            v.status = HierarchyVerdict::Status::non_member;
            break;
        case SosVerdict::Status::inconclusive:
            v.status = HierarchyVerdict::Status::inconclusive;
            break;
    }
    v.details = sos.details;
    v.sos = std::move(sos);
    return v;
}

HierarchyVerdict pnn_member(const SymTensor& T, int r) {
    require_level(r);
    HierarchyVerdict v;
    v.family = HierarchyVerdict::Family::pnn;
    v.level = r;
    HomPoly expanded = multiply(poly_from_tensor(T), power_of_linear_sum(T.dim(), r));
    double worst = 0.0;
    Occupation worst_monomial(static_cast<std::size_t>(T.dim()), 0);
    bool first = true;
    for (const auto& [gamma, c] : expanded.coeffs()) {
        if (first || c < worst) {
            worst = c;
            worst_monomial = gamma;
            first = false;
        }
    }
    v.bad_coefficient = worst;
    v.bad_monomial = worst_monomial;
    if (worst >= -1e-12) {
        v.status = HierarchyVerdict::Status::member;
        v.details = "all expanded coefficients nonnegative";
    } else {
        v.status = HierarchyVerdict::Status::non_member;
        v.details = "negative expanded coefficient " + std::to_string(worst) + " at " +
                    format_occupation(worst_monomial);
    }
    return v;
}

HierarchyVerdict nn_ext_feasible(const SymTensor& Q, int r, const num::NumericContext& ctx) {
    require_level(r);
    HierarchyVerdict v;
    v.family = HierarchyVerdict::Family::nn_ext;
    v.level = r;

    ConeVerdict nn = is_nn(Q);
    if (!nn.member()) {
        v.status = HierarchyVerdict::Status::non_member;
        v.details = "input is not entrywise nonnegative (entry " +
                    format_occupation(nn.bad_alpha) + ")";
        return v;
    }
    if (r == 0) {
        v.status = HierarchyVerdict::Status::member;
        v.extension = Q;
        v.details = "level 0: the tensor is its own extension";
        return v;
    }

    const int n = Q.order(), d = Q.dim();
    const std::vector<Occupation> rows_occ = enumerate_occupations(n, d);
    const std::vector<Occupation> cols_occ = enumerate_occupations(n + r, d);
    const std::vector<Occupation> deltas = enumerate_occupations(r, d);
    const auto col_index = index_of(cols_occ);
    const std::size_t rows = rows_occ.size(), cols = cols_occ.size();

    std::vector<double> A(rows * cols, 0.0), b(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        b[i] = Q.at(rows_occ[i]);
        for (const Occupation& delta : deltas) {
            std::size_t j = col_index.at(plus(rows_occ[i], delta));
            A[i * cols + j] += to_double(multinomial(r, delta));
        }
    }

    num::LpResult lp = num::lp_feasibility(rows, cols, A, b, ctx.eps_lp);
    if (lp.status == num::LpResult::Status::feasible) {
        SymTensor E(n + r, d);
        for (std::size_t j = 0; j < cols; ++j) {
            if (lp.x[j] != 0.0) E.set(cols_occ[j], lp.x[j]);
        }
        double gap = marginal_gap(E, r, Q);
        if (gap > 1e-9) {
            v.status = HierarchyVerdict::Status::inconclusive;
            v.details = "solver point violates the marginal equations (gap " +
                        std::to_string(gap) + ")";
            return v;
        }
        v.status = HierarchyVerdict::Status::member;
        v.extension = std::move(E);
        v.details = "nonnegative extension found (marginal gap " + std::to_string(gap) + ")";
        return v;
    }
    if (!num::verify_farkas_ray(rows, cols, A, b, lp.farkas, ctx.eps_lp)) {
        v.status = HierarchyVerdict::Status::inconclusive;
        v.details = "simplex reported infeasible but the Farkas ray failed verification";
        return v;
    }
    v.status = HierarchyVerdict::Status::non_member;
    v.dual_ray = std::move(lp.farkas);
    v.details = "no nonnegative extension: verified Farkas ray";
    return v;
}

HierarchyVerdict mom_ext_feasible(const SymTensor& Q, int r, const num::NumericContext& ctx) {
    require_level(r);
    HierarchyVerdict v;
    v.family = HierarchyVerdict::Family::mom_ext;
    v.level = r;

    const int n = Q.order(), d = Q.dim();
    ConeVerdict base = is_mom(Q, n / 2);
    if (!base.member()) {
        v.status = HierarchyVerdict::Status::non_member;
        v.details = "input fails the order-n moment condition (" + base.details + ")";
        return v;
    }
    if (r == 0) {
        v.status = HierarchyVerdict::Status::member;
        v.extension = Q;
        v.details = "level 0: the tensor is its own extension";
        return v;
    }

    const std::vector<Occupation> ext_occ = enumerate_occupations(n + r, d);
    const auto ext_index = index_of(ext_occ);
    const std::size_t nvars = ext_occ.size();

    struct PsdSlot {
        Occupation alpha;
        std::vector<Occupation> labels;
        std::size_t offset = 0;
        std::size_t msize = 0;
    };
    std::vector<num::ConeBlock> blocks;
    blocks.push_back(num::ConeBlock::nonneg_of(nvars));
    std::size_t offset = nvars;
    std::vector<PsdSlot> slots;
    for (int j = 1; 2 * j <= n + r; ++j) {
        std::vector<Occupation> labels = enumerate_occupations(j, d);
        for (const Occupation& alpha : enumerate_occupations(n + r - 2 * j, d)) {
            PsdSlot slot;
            slot.alpha = alpha;
            slot.labels = labels;
            slot.offset = offset;
            slot.msize = labels.size();
            offset += slot.msize * slot.msize;
            blocks.push_back(num::ConeBlock::psd_of(slot.msize));
            slots.push_back(std::move(slot));
        }
    }

    std::vector<num::AffineConstraint> constraints;
    for (const Occupation& alpha : enumerate_occupations(n, d)) {
        num::AffineConstraint c;
        c.rhs = Q.at(alpha);
        for (const Occupation& delta : enumerate_occupations(r, d)) {
            c.add_term(ext_index.at(plus(alpha, delta)), to_double(multinomial(r, delta)));
        }
        constraints.push_back(std::move(c));
    }
    for (const PsdSlot& slot : slots) {
        for (std::size_t a = 0; a < slot.msize; ++a) {
            for (std::size_t bcol = a; bcol < slot.msize; ++bcol) {
                num::AffineConstraint c;
                c.rhs = 0.0;
                c.add_term(slot.offset + a * slot.msize + bcol, 1.0);
                std::size_t t = ext_index.at(plus(slot.alpha, plus(slot.labels[a], slot.labels[bcol])));
                if (a == bcol) {
                    c.add_term(t, -1.0);
                } else {
                    c.add_term(slot.offset + bcol * slot.msize + a, 1.0);
                    c.add_term(t, -2.0);
                }
                constraints.push_back(std::move(c));
            }
        }
    }

    // Solve tighter than the re-verification tolerances: the feasible branch
    // may return a point with slack in the linking equations, and that slack
    // must stay below what is_mom accepts per slice.
    num::NumericContext solve_ctx = ctx;
    solve_ctx.eps_psd = 0.01 * ctx.eps_psd;
    solve_ctx.eps_feas = 0.01 * ctx.eps_feas;
    num::FeasibilityVerdict fv = num::product_cone_feasibility(blocks, constraints, solve_ctx);
    if (fv.status == num::FeasibilityVerdict::Status::feasible) {
        SymTensor E(n + r, d);
        for (std::size_t j = 0; j < nvars; ++j) {
            if (fv.point[j] != 0.0) E.set(ext_occ[j], fv.point[j]);
        }
        double gap = marginal_gap(E, r, Q);
        ConeVerdict full = is_mom(E, (n + r) / 2, ctx.eps_psd);
        if (gap > 1e-9 || !full.member()) {
            v.status = HierarchyVerdict::Status::inconclusive;
            v.details = "solver point failed re-verification (marginal gap " +
                        std::to_string(gap) + ", moment check " +
                        (full.member() ? "passed" : "failed") + ")";
            return v;
        }
        v.status = HierarchyVerdict::Status::member;
        v.extension = std::move(E);
        v.details = "moment extension found and re-verified";
        return v;
    }
    if (fv.status == num::FeasibilityVerdict::Status::infeasible) {
        v.status = HierarchyVerdict::Status::non_member;
        v.dual_ray = fv.certificate;
        v.details = "no moment extension: verified separating functional";
        return v;
    }
    v.status = HierarchyVerdict::Status::inconclusive;
    v.details = "alternating projections undecided after " + std::to_string(fv.iterations) +
                " iterations";
    return v;
}

HierarchyVerdict ds_extendibility(const DsMatrix& X, int r, bool ppt,
                                  const num::NumericContext& ctx) {
    require_level(r);
    SymTensor Q = q_view(X);
    HierarchyVerdict v = ppt ? mom_ext_feasible(Q, r, ctx) : nn_ext_feasible(Q, r, ctx);
    if (v.member() && r > 0) {
        // The extension is itself a state: its partial trace must return X.
        DsMatrix ext = lambda_from_q(*v.extension);
        DsMatrix back = ds_marginal(ext, r);
        double worst = 0.0;
        for (const Occupation& a : enumerate_occupations(X.order(), X.dim())) {
            worst = std::max(worst, std::abs(back.lambda(a) - X.lambda(a)));
        }
        if (worst > 1e-8) {
            v.status = HierarchyVerdict::Status::inconclusive;
            v.details = "extension state does not marginalize back to the input (gap " +
                        std::to_string(worst) + ")";
            return v;
        }
        v.details += "; extension state marginalizes back to the input";
    }
    return v;
}

HierarchyVerdict ext_witness_check(const DsMatrix& O, int r, bool decomposable,
                                   const num::NumericContext& ctx) {
    SymTensor W = w_view(O);
    return decomposable ? rsos_member(W, r, ctx) : pnn_member(W, r);
}

}  // namespace dicke
