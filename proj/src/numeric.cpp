#include "dicke/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dicke::num {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string("non-finite entry in ") + what);
        }
    }
}

double max_abs_of(const std::vector<double>& v) {
    double out = 0.0;
    for (double x : v) out = std::max(out, std::abs(x));
    return out;
}

}  // namespace

DenseSym::DenseSym(std::size_t m, std::vector<double> entries) : m_(m), a_(std::move(entries)) {
    if (a_.size() != m * m) throw std::invalid_argument("DenseSym: entry count != m*m");
    require_finite(a_, "DenseSym");
    double scale = std::max(1.0, max_abs_of(a_));
    double asym = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = i + 1; j < m_; ++j) {
            asym = std::max(asym, std::abs(a_[i * m_ + j] - a_[j * m_ + i]));
        }
    }
    if (asym > 1e-12 * scale) {
        throw std::invalid_argument("DenseSym: input is not symmetric");
    }
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = i + 1; j < m_; ++j) {
            double avg = 0.5 * (a_[i * m_ + j] + a_[j * m_ + i]);
            a_[i * m_ + j] = avg;
            a_[j * m_ + i] = avg;
        }
    }
}

DenseSym DenseSym::identity(std::size_t m) {
    DenseSym out(m);
    for (std::size_t i = 0; i < m; ++i) out.a_[i * m + i] = 1.0;
    return out;
}

void DenseSym::set(std::size_t i, std::size_t j, double v) {
    a_[i * m_ + j] = v;
    a_[j * m_ + i] = v;
}

void DenseSym::add(std::size_t i, std::size_t j, double v) {
    a_[i * m_ + j] += v;
    if (i != j) a_[j * m_ + i] += v;
}

double DenseSym::frob_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
}

double DenseSym::max_abs() const { return max_abs_of(a_); }

// ---------------------------------------------------------------------------
// Cyclic Jacobi eigensolver.
// ---------------------------------------------------------------------------

EigResult sym_eig(const DenseSym& M) {
    require_finite(M.data(), "sym_eig input");
    const std::size_t m = M.size();
    std::vector<double> a = M.data();
    std::vector<double> v(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1.0;

    const double norm = M.frob_norm();
    // Off-diagonal Frobenius norm bounds |MV - V Lambda|_F directly, so the
    // stopping threshold is the advertised residual with margin.
    const double target = std::max(1e-10 * norm, 1e-300);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) s += a[i * m + j] * a[i * m + j];
        }
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_norm() <= target) break;
        for (std::size_t p = 0; p + 1 < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                double apq = a[p * m + q];
                if (std::abs(apq) <= 1e-300) continue;
                double app = a[p * m + p];
                double aqq = a[q * m + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e7) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);

                a[p * m + p] = app - t * apq;
                a[q * m + q] = aqq + t * apq;
                a[p * m + q] = 0.0;
                a[q * m + p] = 0.0;
                for (std::size_t r = 0; r < m; ++r) {
                    if (r == p || r == q) continue;
                    double arp = a[r * m + p];
                    double arq = a[r * m + q];
                    a[r * m + p] = arp - s * (arq + tau * arp);
                    a[p * m + r] = a[r * m + p];
                    a[r * m + q] = arq + s * (arp - tau * arq);
                    a[q * m + r] = a[r * m + q];
                }
                for (std::size_t r = 0; r < m; ++r) {
                    double vrp = v[r * m + p];
                    double vrq = v[r * m + q];
                    v[r * m + p] = vrp - s * (vrq + tau * vrp);
                    v[r * m + q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a[i * m + i] < a[j * m + j]; });

    EigResult out;
    out.eigenvalues.reserve(m);
    out.eigenvectors.reserve(m);
    for (std::size_t k : order) {
        out.eigenvalues.push_back(a[k * m + k]);
        std::vector<double> col(m);
        for (std::size_t r = 0; r < m; ++r) col[r] = v[r * m + k];
        out.eigenvectors.push_back(std::move(col));
    }
    return out;
}

PsdResult psd_check(const DenseSym& M, double eps) {
    PsdResult out;
    if (M.size() == 0) {
        out.psd = true;
        return out;
    }
    EigResult eig = sym_eig(M);
    out.min_eigenvalue = eig.eigenvalues.front();
    out.psd = out.min_eigenvalue >= -eps * std::max(1.0, M.max_abs());
    if (!out.psd) out.min_eigenvector = eig.eigenvectors.front();
    return out;
}

DenseSym psd_project(const DenseSym& M) {
    const std::size_t m = M.size();
    EigResult eig = sym_eig(M);
    DenseSym out(m);
    for (std::size_t k = 0; k < m; ++k) {
        double lam = eig.eigenvalues[k];
        if (lam <= 0.0) continue;
        const std::vector<double>& u = eig.eigenvectors[k];
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i; j < m; ++j) {
                out.add(i, j, lam * u[i] * u[j]);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Product-cone feasibility (Dykstra-corrected alternating projections).
// ---------------------------------------------------------------------------

ConeBlock ConeBlock::free_of(std::size_t dim) { return {Kind::free_block, dim, 0}; }
ConeBlock ConeBlock::nonneg_of(std::size_t dim) { return {Kind::nonneg, dim, 0}; }
ConeBlock ConeBlock::psd_of(std::size_t msize) { return {Kind::psd, msize * msize, msize}; }

void AffineConstraint::add_term(std::size_t index, double coeff) {
    if (coeff != 0.0) terms.emplace_back(index, coeff);
}

namespace {

std::size_t total_dim(const std::vector<ConeBlock>& blocks) {
    std::size_t n = 0;
    for (const ConeBlock& b : blocks) n += b.dim;
    return n;
}

// Canonical sparse row: duplicate indices merged, sorted by index.
std::vector<std::pair<std::size_t, double>> canonical_row(const AffineConstraint& c) {
    std::vector<std::pair<std::size_t, double>> row = c.terms;
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::size_t, double>> out;
    for (const auto& [idx, coeff] : row) {
        if (!out.empty() && out.back().first == idx) {
            out.back().second += coeff;
        } else {
            out.emplace_back(idx, coeff);
        }
    }
    return out;
}

struct AffineProjector {
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;
    std::vector<double> rhs;
    std::size_t n = 0;
    // Eigendecomposition of C C^T for the pseudo-inverse.
    std::vector<double> evals;
    std::vector<std::vector<double>> evecs;
    double eig_cutoff = 0.0;

    AffineProjector(const std::vector<AffineConstraint>& constraints, std::size_t n_vars)
        : n(n_vars) {
        rows.reserve(constraints.size());
        rhs.reserve(constraints.size());
        for (const AffineConstraint& c : constraints) {
            rows.push_back(canonical_row(c));
            rhs.push_back(c.rhs);
            for (const auto& [idx, coeff] : rows.back()) {
                (void)coeff;
                if (idx >= n) throw std::invalid_argument("constraint index out of range");
            }
        }
        const std::size_t k = rows.size();
        DenseSym gram(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i; j < k; ++j) {
                // Sparse dot of canonical rows i and j.
                double s = 0.0;
                std::size_t a = 0, b = 0;
                while (a < rows[i].size() && b < rows[j].size()) {
                    if (rows[i][a].first < rows[j][b].first) {
                        ++a;
                    } else if (rows[i][a].first > rows[j][b].first) {
                        ++b;
                    } else {
                        s += rows[i][a].second * rows[j][b].second;
                        ++a;
                        ++b;
                    }
                }
                gram.set(i, j, s);
            }
        }
        EigResult eig = sym_eig(gram);
        evals = std::move(eig.eigenvalues);
        evecs = std::move(eig.eigenvectors);
        double lam_max = evals.empty() ? 0.0 : std::max(0.0, evals.back());
        eig_cutoff = std::max(lam_max * 1e-12, 1e-300);
    }

    std::vector<double> apply_c(const std::vector<double>& x) const {
        std::vector<double> out(rows.size(), 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double s = 0.0;
            for (const auto& [idx, coeff] : rows[i]) s += coeff * x[idx];
            out[i] = s;
        }
        return out;
    }

    void add_ct(std::vector<double>& x, const std::vector<double>& w, double scale) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (const auto& [idx, coeff] : rows[i]) x[idx] += scale * coeff * w[i];
        }
    }

    std::vector<double> pinv_gram(const std::vector<double>& r) const {
        const std::size_t k = rows.size();
        std::vector<double> out(k, 0.0);
        for (std::size_t e = 0; e < k; ++e) {
            if (evals[e] <= eig_cutoff) continue;
            double dot = 0.0;
            for (std::size_t i = 0; i < k; ++i) dot += evecs[e][i] * r[i];
            double c = dot / evals[e];
            for (std::size_t i = 0; i < k; ++i) out[i] += c * evecs[e][i];
        }
        return out;
    }

    // Orthogonal projection onto {x : Cx = rhs} (range-consistent part).
    void project(std::vector<double>& x) const {
        std::vector<double> r = apply_c(x);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= rhs[i];
        std::vector<double> w = pinv_gram(r);
        add_ct(x, w, -1.0);
    }

    double residual_inf(const std::vector<double>& x) const {
        std::vector<double> r = apply_c(x);
        double out = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) out = std::max(out, std::abs(r[i] - rhs[i]));
        return out;
    }
};

void cone_project(const std::vector<ConeBlock>& blocks, std::vector<double>& x) {
    std::size_t off = 0;
    for (const ConeBlock& b : blocks) {
        switch (b.kind) {
            case ConeBlock::Kind::free_block:
                break;
            case ConeBlock::Kind::nonneg:
                for (std::size_t i = 0; i < b.dim; ++i) x[off + i] = std::max(0.0, x[off + i]);
                break;
            case ConeBlock::Kind::psd: {
                const std::size_t m = b.msize;
                DenseSym mat(m);
                for (std::size_t i = 0; i < m; ++i) {
                    for (std::size_t j = i; j < m; ++j) {
                        double avg = 0.5 * (x[off + i * m + j] + x[off + j * m + i]);
                        mat.set(i, j, avg);
                    }
                }
                DenseSym proj = psd_project(mat);
                for (std::size_t i = 0; i < m; ++i) {
                    for (std::size_t j = 0; j < m; ++j) x[off + i * m + j] = proj(i, j);
                }
                break;
            }
        }
        off += b.dim;
    }
}

// Worst violation of the product cone at x (0 when inside).
double cone_violation(const std::vector<ConeBlock>& blocks, const std::vector<double>& x) {
    double worst = 0.0;
    std::size_t off = 0;
    for (const ConeBlock& b : blocks) {
        switch (b.kind) {
            case ConeBlock::Kind::free_block:
                break;
            case ConeBlock::Kind::nonneg:
                for (std::size_t i = 0; i < b.dim; ++i) worst = std::max(worst, -x[off + i]);
                break;
            case ConeBlock::Kind::psd: {
                const std::size_t m = b.msize;
                DenseSym mat(m);
                for (std::size_t i = 0; i < m; ++i) {
                    for (std::size_t j = i; j < m; ++j) {
                        mat.set(i, j, 0.5 * (x[off + i * m + j] + x[off + j * m + i]));
                    }
                }
                if (m > 0) {
                    EigResult eig = sym_eig(mat);
                    worst = std::max(worst, -eig.eigenvalues.front());
                }
                break;
            }
        }
        off += b.dim;
    }
    return worst;
}

// Dual-cone membership of g within tol (K* per block: free -> 0, nonneg ->
// nonneg, psd -> psd).
bool in_dual_cone(const std::vector<ConeBlock>& blocks, const std::vector<double>& g, double tol) {
    std::size_t off = 0;
    for (const ConeBlock& b : blocks) {
        switch (b.kind) {
            case ConeBlock::Kind::free_block:
                for (std::size_t i = 0; i < b.dim; ++i) {
                    if (std::abs(g[off + i]) > tol) return false;
                }
                break;
            case ConeBlock::Kind::nonneg:
                for (std::size_t i = 0; i < b.dim; ++i) {
                    if (g[off + i] < -tol) return false;
                }
                break;
            case ConeBlock::Kind::psd: {
                const std::size_t m = b.msize;
                DenseSym mat(m);
                for (std::size_t i = 0; i < m; ++i) {
                    for (std::size_t j = i; j < m; ++j) {
                        mat.set(i, j, 0.5 * (g[off + i * m + j] + g[off + j * m + i]));
                    }
                }
                if (m > 0) {
                    EigResult eig = sym_eig(mat);
                    if (eig.eigenvalues.front() < -tol) return false;
                }
                break;
            }
        }
        off += b.dim;
    }
    return true;
}

}  // namespace

bool verify_infeasibility_certificate(const std::vector<ConeBlock>& blocks,
                                      const std::vector<AffineConstraint>& constraints,
                                      const std::vector<double>& w, double tol) {
    if (w.size() != constraints.size()) return false;
    const std::size_t n = total_dim(blocks);
    std::vector<double> g(n, 0.0);
    double value = 0.0;
    double rhs_scale = 1.0;
    for (std::size_t k = 0; k < constraints.size(); ++k) {
        for (const auto& [idx, coeff] : constraints[k].terms) {
            if (idx >= n) return false;
            g[idx] += w[k] * coeff;
        }
        value += w[k] * constraints[k].rhs;
        rhs_scale = std::max(rhs_scale, std::abs(constraints[k].rhs));
    }
    // g must be (approximately) in the dual cone, yet evaluate negatively on
    // every affine-feasible point: <g, x> = sum w_k rhs_k < 0.
    double gscale = std::max(1.0, max_abs_of(g));
    if (!in_dual_cone(blocks, g, tol * gscale)) return false;
    return value < -tol * rhs_scale;
}

FeasibilityVerdict product_cone_feasibility(const std::vector<ConeBlock>& blocks,
                                            const std::vector<AffineConstraint>& constraints,
                                            const NumericContext& ctx) {
    const std::size_t n = total_dim(blocks);
    FeasibilityVerdict out;

    AffineProjector aff(constraints, n);
    double rhs_scale = std::max(1.0, max_abs_of(aff.rhs));

    // Start from the least-squares affine point; if even that misses the
    // right-hand side, the affine system itself is inconsistent.
    std::vector<double> x(n, 0.0);
    aff.project(x);
    {
        double res = aff.residual_inf(x);
        if (res > 1e-9 * rhs_scale) {
            std::vector<double> r = aff.apply_c(x);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= aff.rhs[i];
            double rn = max_abs_of(r);
            std::vector<double> w(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) w[i] = r[i] / rn;
            out.status = FeasibilityVerdict::Status::infeasible;
            out.certificate = std::move(w);
            out.affine_residual = res;
            return out;
        }
    }

    std::vector<double> p(n, 0.0), q(n, 0.0);
    std::vector<double> y(n, 0.0), z = x;
    double prev_gap = std::numeric_limits<double>::infinity();

    const int check_every = 5;
    for (int it = 1; it <= ctx.max_iter; ++it) {
        // Dykstra: cone step with correction p, then affine step with q.
        y = z;
        for (std::size_t i = 0; i < n; ++i) y[i] += p[i];
        std::vector<double> y_in = y;
        cone_project(blocks, y);
        for (std::size_t i = 0; i < n; ++i) p[i] = y_in[i] - y[i];

        std::vector<double> z_in = y;
        for (std::size_t i = 0; i < n; ++i) z_in[i] += q[i];
        z = z_in;
        aff.project(z);
        for (std::size_t i = 0; i < n; ++i) q[i] = z_in[i] - z[i];

        out.iterations = it;
        if (it % check_every != 0 && it != ctx.max_iter) continue;

        double xscale = std::max(1.0, max_abs_of(z));
        double viol_z = cone_violation(blocks, z);
        if (viol_z <= ctx.eps_psd * xscale) {
            out.status = FeasibilityVerdict::Status::feasible;
            out.point = z;
            out.affine_residual = aff.residual_inf(z);
            out.cone_residual = viol_z;
            return out;
        }
        double res_y = aff.residual_inf(y);
        if (res_y <= ctx.eps_feas * rhs_scale) {
            out.status = FeasibilityVerdict::Status::feasible;
            out.point = y;
            out.affine_residual = res_y;
            out.cone_residual = cone_violation(blocks, y);
            return out;
        }

        // Separation attempt once the gap between the two projections stops
        // shrinking: the normalized gap vector is the candidate functional.
        double gap = 0.0;
        for (std::size_t i = 0; i < n; ++i) gap += (y[i] - z[i]) * (y[i] - z[i]);
        gap = std::sqrt(gap);
        bool stalled = gap > 1e3 * ctx.eps_feas * xscale &&
                       std::abs(prev_gap - gap) <= 1e-10 * std::max(gap, 1e-30);
        prev_gap = gap;
        if (stalled || it == ctx.max_iter) {
            std::vector<double> s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = (y[i] - z[i]) / gap;
            for (double sign : {1.0, -1.0}) {
                std::vector<double> sv = s;
                for (double& v : sv) v *= sign;
                std::vector<double> w = aff.pinv_gram(aff.apply_c(sv));
                double value = 0.0;
                for (std::size_t i = 0; i < w.size(); ++i) value += w[i] * aff.rhs[i];
                if (value >= 0.0) continue;
                for (double& wi : w) wi /= -value;  // normalize to <w, rhs> = -1
                if (verify_infeasibility_certificate(blocks, constraints, w,
                                                     10.0 * ctx.eps_psd)) {
                    out.status = FeasibilityVerdict::Status::infeasible;
                    out.certificate = std::move(w);
                    out.affine_residual = aff.residual_inf(z);
                    out.cone_residual = viol_z;
                    return out;
                }
            }
            if (stalled && it < ctx.max_iter) {
                // Gap is stable but not certified: keep iterating, the stall
                // detector only re-arms when the gap moves again.
                prev_gap = std::numeric_limits<double>::infinity();
            }
        }
    }

    out.status = FeasibilityVerdict::Status::inconclusive;
    out.point = z;
    out.affine_residual = aff.residual_inf(z);
    out.cone_residual = cone_violation(blocks, z);
    return out;
}

FeasibilityVerdict affine_psd_feasibility(std::size_t m,
                                          const std::vector<std::pair<DenseSym, double>>& constraints,
                                          const NumericContext& ctx) {
    std::vector<ConeBlock> blocks = {ConeBlock::psd_of(m)};
    std::vector<AffineConstraint> rows;
    rows.reserve(constraints.size());
    for (const auto& [mat, b] : constraints) {
        if (mat.size() != m) throw std::invalid_argument("constraint matrix size mismatch");
        AffineConstraint row;
        row.rhs = b;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                row.add_term(i * m + j, mat(i, j));
            }
        }
        rows.push_back(std::move(row));
    }
    return product_cone_feasibility(blocks, rows, ctx);
}

// ---------------------------------------------------------------------------
// Phase-1 simplex.
// ---------------------------------------------------------------------------

LpResult lp_feasibility(std::size_t rows, std::size_t cols,
                        const std::vector<double>& A, const std::vector<double>& b,
                        double eps_lp) {
    if (A.size() != rows * cols || b.size() != rows) {
        throw std::invalid_argument("lp_feasibility: shape mismatch");
    }
    require_finite(A, "lp matrix");
    require_finite(b, "lp rhs");

    LpResult out;
    if (rows == 0) {
        out.status = LpResult::Status::feasible;
        out.x.assign(cols, 0.0);
        return out;
    }

    // Flip rows so the right-hand side is nonnegative; artificials form the
    // initial basis.  Tableau columns: [original | artificial | rhs].
    std::vector<double> rowsign(rows, 1.0);
    const std::size_t width = cols + rows + 1;
    std::vector<double> t((rows + 1) * width, 0.0);
    auto tab = [&](std::size_t i, std::size_t j) -> double& { return t[i * width + j]; };

    for (std::size_t i = 0; i < rows; ++i) {
        double sgn = (b[i] < 0.0) ? -1.0 : 1.0;
        rowsign[i] = sgn;
        for (std::size_t j = 0; j < cols; ++j) tab(i, j) = sgn * A[i * cols + j];
        tab(i, cols + i) = 1.0;
        tab(i, cols + rows) = sgn * b[i];
    }
    // Phase-1 objective row: minimize the artificial sum; reduced costs start
    // as -(column sums) for original columns, 0 for artificials.
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += tab(i, j);
        tab(rows, j) = -s;
    }
    double rhs_sum = 0.0;
    for (std::size_t i = 0; i < rows; ++i) rhs_sum += tab(i, cols + rows);
    tab(rows, cols + rows) = -rhs_sum;

    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

    const double scale = std::max(1.0, max_abs_of(b));
    int iters = 0;
    const int iter_cap = 50000;
    while (iters++ < iter_cap) {
        // Bland's rule: smallest-index column with negative reduced cost.
        std::size_t enter = width;
        for (std::size_t j = 0; j < cols + rows; ++j) {
            if (tab(rows, j) < -eps_lp) {
                enter = j;
                break;
            }
        }
        if (enter == width) break;

        std::size_t leave = rows;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            double piv = tab(i, enter);
            if (piv > eps_lp) {
                double ratio = tab(i, cols + rows) / piv;
                if (leave == rows || ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave == rows) break;  // unbounded cannot happen in phase 1

        double piv = tab(leave, enter);
        for (std::size_t j = 0; j < width; ++j) tab(leave, j) /= piv;
        for (std::size_t i = 0; i <= rows; ++i) {
            if (i == leave) continue;
            double f = tab(i, enter);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) tab(i, j) -= f * tab(leave, j);
        }
        basis[leave] = enter;
    }
    out.iterations = iters;

    double objective = -tab(rows, cols + rows);
    if (objective <= 1e-9 * scale) {
        out.status = LpResult::Status::feasible;
        out.x.assign(cols, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
            if (basis[i] < cols) out.x[basis[i]] = std::max(0.0, tab(i, cols + rows));
        }
        return out;
    }

    // Farkas ray from the artificial reduced costs: y_i = 1 - redcost(a_i),
    // mapped back through the row sign flips.
    out.status = LpResult::Status::infeasible;
    out.farkas.assign(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        out.farkas[i] = rowsign[i] * (1.0 - tab(rows, cols + i));
    }
    return out;
}

bool verify_farkas_ray(std::size_t rows, std::size_t cols,
                       const std::vector<double>& A, const std::vector<double>& b,
                       const std::vector<double>& y, double tol) {
    if (y.size() != rows) return false;
    double scale = std::max(1.0, max_abs_of(y));
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += y[i] * A[i * cols + j];
        if (s > tol * scale) return false;
    }
    double v = 0.0;
    for (std::size_t i = 0; i < rows; ++i) v += y[i] * b[i];
    return v > tol * scale;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace dicke::num
