#include "dicke/soscone.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace dicke {

namespace {

Occupation half_of(const Occupation& gamma) {
    Occupation half(gamma.size());
    for (std::size_t v = 0; v < gamma.size(); ++v) half[v] = gamma[v] / 2;
    return half;
}

bool all_even(const Occupation& gamma) {
    return std::all_of(gamma.begin(), gamma.end(), [](int e) { return e % 2 == 0; });
}

/// Largest monomial x^mu dividing every term of p; empty support gives zero.
Occupation common_factor(const HomPoly& p) {
    Occupation mu(static_cast<std::size_t>(p.dim()),
                  p.coeffs().empty() ? 0 : p.degree());
    for (const auto& [gamma, coeff] : p.coeffs()) {
        (void)coeff;
        for (std::size_t v = 0; v < mu.size(); ++v) {
            mu[v] = std::min(mu[v], gamma[v]);
        }
    }
    return mu;
}

HomPoly divide_out(const HomPoly& p, const Occupation& mu) {
    int drop = order_of(mu);
    HomPoly q(p.dim(), p.degree() - drop);
    for (const auto& [gamma, coeff] : p.coeffs()) {
        Occupation shifted(gamma.size());
        for (std::size_t v = 0; v < gamma.size(); ++v) shifted[v] = gamma[v] - mu[v];
        q.set_coeff(shifted, coeff);
    }
    return q;
}

/// Fits p against the symmetric cubic family a*M3 + b*M1*M2 + c*M1^3.
/// Succeeds only when the coefficients are constant across each exponent
/// pattern (x_i^3 / x_i^2 x_j / x_i x_j x_k), i.e. the polynomial is
/// symmetric-group invariant.  Requires degree 3 and d >= 3.
std::optional<std::array<double, 3>> cubic_family_fit(const HomPoly& p) {
    const int d = p.dim();
    if (p.degree() != 3 || d < 3) return std::nullopt;
    auto agree = [](double x, double y) {
        return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
    };
    auto mono = [&](int i, int j, int k) {
        Occupation g(static_cast<std::size_t>(d), 0);
        ++g[static_cast<std::size_t>(i)];
        ++g[static_cast<std::size_t>(j)];
        ++g[static_cast<std::size_t>(k)];
        return g;
    };
    const double cube = p.coeff(mono(0, 0, 0));
    const double square = p.coeff(mono(0, 0, 1));
    const double mixed = p.coeff(mono(0, 1, 2));
    for (int i = 0; i < d; ++i) {
        if (!agree(p.coeff(mono(i, i, i)), cube)) return std::nullopt;
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            if (!agree(p.coeff(mono(i, i, j)), square)) return std::nullopt;
            for (int k = j + 1; k < d; ++k) {
                if (k == i || j == i) continue;
                if (!agree(p.coeff(mono(i, j, k)), mixed)) return std::nullopt;
            }
        }
    }
    // Invert cube = a + b + c, square = b + 3c, mixed = 6c.
    const double c = mixed / 6.0;
    const double b = square - 3.0 * c;
    const double a = cube - b - c;
    return std::array<double, 3>{a, b, c};
}

double pstar_at(double a, double b, double c, double t) { return a + t * (b + t * c); }

/// Numeric zeros of q on the unit sphere (projected gradient descent,
/// multi-start).  Every sum-of-squares certificate of q must annihilate the
/// monomial evaluation vector of such a zero, so these drive the facial
/// reduction that rescues Gram systems without interior points.
std::vector<std::vector<double>> sphere_zeros(const HomPoly& q, const num::NumericContext& ctx) {
    const int d = q.dim();
    double scale = 1.0;
    for (const auto& [g, coeff] : q.coeffs()) {
        (void)g;
        scale = std::max(scale, std::abs(coeff));
    }
    std::vector<std::vector<double>> zeros;
    auto seen = [&](const std::vector<double>& x) {
        for (const auto& z : zeros) {
            double dist = 0.0;
            for (int v = 0; v < d; ++v) {
                dist += (z[static_cast<std::size_t>(v)] - x[static_cast<std::size_t>(v)]) *
                        (z[static_cast<std::size_t>(v)] - x[static_cast<std::size_t>(v)]);
            }
            if (dist < 1e-8) return true;
        }
        return false;
    };
    // Zeros of boundary SOS forms in this problem family sit at arithmetic-
    // mean equality points whose squared coordinates are small rationals.
    // Snapping a converged iterate onto that pattern (and verifying the
    // polynomial really vanishes there) upgrades it to machine precision,
    // which the downstream facial reduction needs.
    auto snap = [&](const std::vector<double>& x) -> std::optional<std::vector<double>> {
        double top = 0.0;
        for (double e : x) top = std::max(top, e * e);
        if (top == 0.0) return std::nullopt;
        std::vector<double> snapped(x.size());
        for (std::size_t v = 0; v < x.size(); ++v) {
            const double r = x[v] * x[v] / top;
            bool hit = false;
            for (int den = 1; den <= 24 && !hit; ++den) {
                const double scaled = r * den;
                const double num_ = std::round(scaled);
                if (std::abs(scaled - num_) <= 1e-3 * den) {
                    double mag = std::sqrt(num_ / den);
                    snapped[v] = (x[v] < 0.0 ? -mag : mag);
                    hit = true;
                }
            }
            if (!hit) return std::nullopt;
        }
        double norm = 0.0;
        for (double e : snapped) norm += e * e;
        if (norm == 0.0) return std::nullopt;
        norm = std::sqrt(norm);
        for (double& e : snapped) e /= norm;
        if (std::abs(q.evaluate(snapped)) > 1e-13 * scale) return std::nullopt;
        return snapped;
    };
    for (int s = 0; s < ctx.restarts; ++s) {
        std::mt19937_64 rng(num::derive_seed(ctx.seed, 7000 + static_cast<std::uint64_t>(s)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> x(static_cast<std::size_t>(d));
        double norm = 0.0;
        for (double& e : x) {
            e = gauss(rng);
            norm += e * e;
        }
        norm = std::sqrt(norm);
        for (double& e : x) e /= norm;
        double value = q.evaluate(x);
        double step = 0.5;
        for (int it = 0; it < 1000; ++it) {
            std::vector<double> grad(static_cast<std::size_t>(d));
            double dot = 0.0;
            for (int v = 0; v < d; ++v) {
                grad[static_cast<std::size_t>(v)] = q.partial(x, v);
                dot += grad[static_cast<std::size_t>(v)] * x[static_cast<std::size_t>(v)];
            }
            double tan_norm = 0.0;
            for (int v = 0; v < d; ++v) {
                grad[static_cast<std::size_t>(v)] -= dot * x[static_cast<std::size_t>(v)];
                tan_norm += grad[static_cast<std::size_t>(v)] * grad[static_cast<std::size_t>(v)];
            }
            if (tan_norm <= 1e-30 * scale * scale) break;
            step = std::min(step * 2.0, 1.0);
            bool moved = false;
            while (step > 1e-16) {
                std::vector<double> y(static_cast<std::size_t>(d));
                double ynorm = 0.0;
                for (int v = 0; v < d; ++v) {
                    y[static_cast<std::size_t>(v)] =
                        x[static_cast<std::size_t>(v)] - step * grad[static_cast<std::size_t>(v)];
                    ynorm += y[static_cast<std::size_t>(v)] * y[static_cast<std::size_t>(v)];
                }
                ynorm = std::sqrt(ynorm);
                for (double& e : y) e /= ynorm;
                double vy = q.evaluate(y);
                if (vy <= value - 0.25 * step * tan_norm) {  // Armijo decrease
                    x = std::move(y);
                    value = vy;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        std::optional<std::vector<double>> zero;
        if (std::abs(value) <= 1e-8 * scale) {
            zero = snap(x);  // try the exact rational-square pattern first
        }
        if (!zero && std::abs(value) <= 1e-14 * scale) {
            zero = x;  // tight numeric zero, usable as-is
        }
        if (zero) {
            // Canonical sign: coordinate of largest magnitude positive.
            std::size_t lead = 0;
            for (std::size_t v = 1; v < zero->size(); ++v) {
                if (std::abs((*zero)[v]) > std::abs((*zero)[lead])) lead = v;
            }
            if ((*zero)[lead] < 0.0) {
                for (double& e : *zero) e = -e;
            }
            if (!seen(*zero)) zeros.push_back(*zero);
        }
    }
    return zeros;
}

}  // namespace

PstarRecord pstar_min_reals(double a, double b, double c, int d) {
    if (d < 2) throw std::invalid_argument("pstar_min_reals: d must be >= 2");
    PstarRecord rec{a, b, c, 1.0, pstar_at(a, b, c, 1.0)};
    auto consider = [&](double t) {
        double v = pstar_at(a, b, c, t);
        if (v < rec.value) {
            rec.t = t;
            rec.value = v;
        }
    };
    consider(2.0);
    consider(static_cast<double>(d));
    if (c > 0.0) {
        double vertex = -b / (2.0 * c);
        if (vertex > 2.0 && vertex < static_cast<double>(d)) consider(vertex);
    }
    return rec;
}

PstarRecord pstar_min_integers(double a, double b, double c, int d) {
    if (d < 2) throw std::invalid_argument("pstar_min_integers: d must be >= 2");
    PstarRecord rec{a, b, c, 1.0, pstar_at(a, b, c, 1.0)};
    for (int t = 2; t <= d; ++t) {
        double v = pstar_at(a, b, c, static_cast<double>(t));
        if (v < rec.value) {
            rec.t = static_cast<double>(t);
            rec.value = v;
        }
    }
    return rec;
}

std::optional<SosObstruction> newton_obstruction(const HomPoly& p) {
    if (p.degree() % 2 != 0) {
        throw std::invalid_argument("newton_obstruction: degree must be even");
    }
    if (p.coeffs().empty()) return std::nullopt;
    const std::vector<Occupation> basis = half_newton_basis(p);
    const std::set<Occupation> in_basis(basis.begin(), basis.end());
    for (const auto& [gamma, coeff] : p.coeffs()) {
        if (coeff >= 0.0 || !all_even(gamma)) continue;
        const Occupation half = half_of(gamma);
        bool split = false;
        for (const Occupation& b1 : basis) {
            if (b1 == half) continue;
            Occupation b2(gamma.size());
            bool fits = true;
            for (std::size_t v = 0; v < gamma.size(); ++v) {
                b2[v] = gamma[v] - b1[v];
                if (b2[v] < 0) {
                    fits = false;
                    break;
                }
            }
            if (fits && in_basis.count(b2)) {
                split = true;
                break;
            }
        }
        if (!split) return SosObstruction{gamma, coeff, half};
    }
    return std::nullopt;
}

SosVerdict is_sos_tensor(const SymTensor& T, const num::NumericContext& ctx) {
    SosVerdict out;
    out.level = -1;
    if (T.values().empty()) {
        out.status = SosVerdict::Status::sos;
        out.details = "zero tensor";
        return out;
    }

    HomPoly p = poly_from_tensor(T);
    const Occupation mu = common_factor(p);
    std::string note;
    if (order_of(mu) > 0) {
        p = divide_out(p, mu);
        note = "stripped common factor x^" + format_occupation(mu) + "; ";
    }

    if (p.degree() == 0) {
        // Single-monomial tensor: c * x^(2 mu) after square substitution.
        const double c = p.coeff(Occupation(static_cast<std::size_t>(p.dim()), 0));
        if (c >= 0.0) {
            out.status = SosVerdict::Status::sos;
            out.details = note + "single square";
        } else {
            out.status = SosVerdict::Status::not_sos;
            Occupation doubled(mu);
            for (int& e : doubled) e *= 2;
            out.obstruction = SosObstruction{doubled, c, mu};
            out.details = note + "negative monomial coefficient";
        }
        return out;
    }

    if (auto fam = cubic_family_fit(p)) {
        const auto [a, b, c] = *fam;
        const PstarRecord rec = pstar_min_reals(a, b, c, p.dim());
        out.pstar = rec;
        const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
        if (rec.value < -1e-12 * scale) {
            out.status = SosVerdict::Status::not_sos;
            out.details = note + "cubic family pstar criterion: pstar(" +
                          std::to_string(rec.t) + ") = " + std::to_string(rec.value);
        } else {
            out.status = SosVerdict::Status::sos;
            out.details = note + "cubic family pstar criterion: min pstar = " +
                          std::to_string(rec.value);
        }
        return out;
    }

    const HomPoly q = substitute_squares(p);
    if (auto obs = newton_obstruction(q)) {
        out.status = SosVerdict::Status::not_sos;
        out.obstruction = obs;
        out.details = note + "Newton support obstruction at " +
                      format_occupation(obs->monomial);
        return out;
    }

    // Numeric Gram feasibility over the half-Newton basis.
    const std::vector<Occupation> basis = half_newton_basis(q);
    out.basis = basis;
    const std::size_t N = basis.size();
    if (N == 0) {
        out.status = SosVerdict::Status::not_sos;
        out.details = note + "empty Gram basis for a nonzero polynomial";
        return out;
    }
    std::map<Occupation, num::DenseSym> rows;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
            Occupation sum(basis[i].size());
            for (std::size_t v = 0; v < sum.size(); ++v) {
                sum[v] = basis[i][v] + basis[j][v];
            }
            auto [it, fresh] = rows.try_emplace(std::move(sum), num::DenseSym(N));
            (void)fresh;
            it->second.add(i, j, 1.0);
        }
    }
    for (const auto& [gamma, coeff] : q.coeffs()) {
        if (!rows.count(gamma)) {
            // No product of basis monomials reaches gamma, so its coefficient
            // would be zero in every sum of squares.
            out.status = SosVerdict::Status::not_sos;
            out.details = note + "support monomial " + format_occupation(gamma) +
                          " is unreachable from the Gram basis";
            return out;
        }
    }
    std::vector<std::pair<num::DenseSym, double>> constraints;
    constraints.reserve(rows.size());
    for (auto& [gamma, row] : rows) {
        constraints.emplace_back(std::move(row), q.coeff(gamma));
    }

    num::FeasibilityVerdict fv = num::affine_psd_feasibility(N, constraints, ctx);
    bool reduced = false;
    if (fv.status == num::FeasibilityVerdict::Status::inconclusive) {
        // A real zero x0 of q forces every Gram certificate to annihilate the
        // basis evaluation vector v_i = x0^beta_i, because v' G v = q(x0) = 0
        // and G is PSD.  Facial reduction: write G = U H U' with U spanning
        // the orthogonal complement of those vectors; the reduced unknown H
        // lives on a face with interior, which alternating projections need.
        const std::vector<std::vector<double>> zeros = sphere_zeros(q, ctx);
        std::vector<std::vector<double>> kernel;
        for (const auto& x0 : zeros) {
            std::vector<double> v(N);
            for (std::size_t i = 0; i < N; ++i) {
                double m = 1.0;
                for (std::size_t var = 0; var < x0.size(); ++var) {
                    for (int e = 0; e < basis[i][var]; ++e) m *= x0[var];
                }
                v[i] = m;
            }
            for (const auto& k : kernel) {
                double dot = 0.0;
                for (std::size_t i = 0; i < N; ++i) dot += k[i] * v[i];
                for (std::size_t i = 0; i < N; ++i) v[i] -= dot * k[i];
            }
            double norm = 0.0;
            for (double e : v) norm += e * e;
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (double& e : v) e /= norm;
                kernel.push_back(std::move(v));
            }
        }
        if (!kernel.empty() && kernel.size() < N) {
            reduced = true;
            // Orthonormal basis of the complement via Gram-Schmidt on e_i.
            std::vector<std::vector<double>> U;
            for (std::size_t i = 0; i < N && U.size() < N - kernel.size(); ++i) {
                std::vector<double> u(N, 0.0);
                u[i] = 1.0;
                for (const auto& k : kernel) {
                    double dot = k[i];
                    for (std::size_t r = 0; r < N; ++r) u[r] -= dot * k[r];
                }
                for (const auto& w : U) {
                    double dot = 0.0;
                    for (std::size_t r = 0; r < N; ++r) dot += w[r] * u[r];
                    for (std::size_t r = 0; r < N; ++r) u[r] -= dot * w[r];
                }
                double norm = 0.0;
                for (double e : u) norm += e * e;
                norm = std::sqrt(norm);
                if (norm > 1e-8) {
                    for (double& e : u) e /= norm;
                    U.push_back(std::move(u));
                }
            }
            const std::size_t M = U.size();
            std::vector<std::pair<num::DenseSym, double>> small;
            small.reserve(constraints.size());
            for (const auto& [A, rhs] : constraints) {
                num::DenseSym B(M);
                for (std::size_t p = 0; p < M; ++p) {
                    for (std::size_t r = p; r < M; ++r) {
                        double e = 0.0;
                        for (std::size_t i = 0; i < N; ++i) {
                            double row = 0.0;
                            for (std::size_t j2 = 0; j2 < N; ++j2) {
                                row += A(i, j2) * U[r][j2];
                            }
                            e += U[p][i] * row;
                        }
                        B.set(p, r, e);
                    }
                }
                small.emplace_back(std::move(B), rhs);
            }
            const num::FeasibilityVerdict rv = num::affine_psd_feasibility(M, small, ctx);
            if (rv.status == num::FeasibilityVerdict::Status::feasible) {
                // Expand H back to the full Gram G = U H U'.
                num::DenseSym G(N);
                for (std::size_t i = 0; i < N; ++i) {
                    for (std::size_t j2 = i; j2 < N; ++j2) {
                        double e = 0.0;
                        for (std::size_t p = 0; p < M; ++p) {
                            for (std::size_t r = 0; r < M; ++r) {
                                e += U[p][i] * rv.point[p * M + r] * U[r][j2];
                            }
                        }
                        G.set(i, j2, e);
                    }
                }
                out.status = SosVerdict::Status::sos;
                out.blocks.push_back(GramBlock{-1, {}, basis, std::move(G)});
                out.details = note + "Gram certificate after facial reduction (" +
                              std::to_string(kernel.size()) + " zero directions), " +
                              "affine residual " + std::to_string(rv.affine_residual);
                return out;
            }
            fv = rv;
        }
    }
    switch (fv.status) {
        case num::FeasibilityVerdict::Status::feasible:
            out.status = SosVerdict::Status::sos;
            out.blocks.push_back(GramBlock{-1, {}, basis, num::DenseSym(N, fv.point)});
            out.details = note + "Gram certificate, affine residual " +
                          std::to_string(fv.affine_residual);
            break;
        case num::FeasibilityVerdict::Status::infeasible:
            if (reduced) {
                // The reduction used numeric zeros, so infeasibility of the
                // reduced system is not a rigorous negative.
                out.status = SosVerdict::Status::inconclusive;
                out.details = note + "Gram system infeasible after zero reduction "
                                     "(numeric zeros, not authoritative)";
            } else {
                out.status = SosVerdict::Status::not_sos;
                out.details = note + "Gram system infeasible (verified certificate)";
            }
            break;
        case num::FeasibilityVerdict::Status::inconclusive:
            out.status = SosVerdict::Status::inconclusive;
            out.details = note + "Gram feasibility undecided after " +
                          std::to_string(fv.iterations) + " iterations" +
                          (reduced ? " (with facial reduction)" : " (no usable zeros)");
            break;
    }
    return out;
}

SosVerdict structured_sos_level(const SymTensor& T, int l, const num::NumericContext& ctx) {
    const int n = T.order();
    const int d = T.dim();
    if (l < 0 || 2 * l > n) {
        throw std::invalid_argument("structured_sos_level: need 0 <= 2l <= order");
    }

    SosVerdict out;
    out.level = l;

    const std::vector<Occupation> gammas = enumerate_occupations(n, d);
    const std::size_t n_rows = gammas.size();

    // Block layout: nonneg scalars t_gamma first, then one PSD Gram block per
    // (j, alpha) summand y^alpha psi_{j,alpha}(y) for j = 1..l.
    std::vector<num::ConeBlock> blocks;
    blocks.push_back(num::ConeBlock::nonneg_of(n_rows));
    struct PsdSlot {
        int j;
        Occupation alpha;
        std::size_t offset;  // start within the concatenated variable vector
        std::size_t msize;
    };
    std::vector<PsdSlot> slots;
    std::size_t offset = n_rows;
    for (int j = 1; j <= l; ++j) {
        const std::size_t sj = sym_dim(j, d);
        for (const Occupation& alpha : enumerate_occupations(n - 2 * j, d)) {
            slots.push_back(PsdSlot{j, alpha, offset, sj});
            blocks.push_back(num::ConeBlock::psd_of(sj));
            offset += sj * sj;
        }
    }

    // Pair sums beta_a + beta_b of the degree-j labels, per j.
    std::vector<std::vector<Occupation>> labels_of(static_cast<std::size_t>(l) + 1);
    std::vector<std::map<Occupation, std::vector<std::pair<std::size_t, std::size_t>>>>
        pair_sums(static_cast<std::size_t>(l) + 1);
    for (int j = 1; j <= l; ++j) {
        labels_of[static_cast<std::size_t>(j)] = enumerate_occupations(j, d);
        const auto& labels = labels_of[static_cast<std::size_t>(j)];
        for (std::size_t a = 0; a < labels.size(); ++a) {
            for (std::size_t b = 0; b < labels.size(); ++b) {
                Occupation sum(labels[a].size());
                for (std::size_t v = 0; v < sum.size(); ++v) {
                    sum[v] = labels[a][v] + labels[b][v];
                }
                pair_sums[static_cast<std::size_t>(j)][std::move(sum)].emplace_back(a, b);
            }
        }
    }

    std::vector<num::AffineConstraint> rows(n_rows);
    for (std::size_t g = 0; g < n_rows; ++g) {
        const Occupation& gamma = gammas[g];
        rows[g].rhs = to_double(multinomial(n, gamma)) * T.at(gamma);
        rows[g].add_term(g, 1.0);
        for (const PsdSlot& slot : slots) {
            Occupation delta(gamma.size());
            bool fits = true;
            for (std::size_t v = 0; v < gamma.size(); ++v) {
                delta[v] = gamma[v] - slot.alpha[v];
                if (delta[v] < 0) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;
            const auto& sums = pair_sums[static_cast<std::size_t>(slot.j)];
            auto it = sums.find(delta);
            if (it == sums.end()) continue;
            for (const auto& [a, b] : it->second) {
                rows[g].add_term(slot.offset + a * slot.msize + b, 1.0);
            }
        }
    }

    const num::FeasibilityVerdict fv = num::product_cone_feasibility(blocks, rows, ctx);
    switch (fv.status) {
        case num::FeasibilityVerdict::Status::feasible: {
            out.status = SosVerdict::Status::sos;
            const Occupation unit(static_cast<std::size_t>(d), 0);
            for (std::size_t g = 0; g < n_rows; ++g) {
                num::DenseSym scalar(1);
                scalar.set(0, 0, fv.point[g]);
                out.blocks.push_back(GramBlock{0, gammas[g], {unit}, scalar});
            }
            for (const PsdSlot& slot : slots) {
                std::vector<double> entries(
                    fv.point.begin() + static_cast<std::ptrdiff_t>(slot.offset),
                    fv.point.begin() +
                        static_cast<std::ptrdiff_t>(slot.offset + slot.msize * slot.msize));
                out.blocks.push_back(GramBlock{slot.j, slot.alpha,
                                               labels_of[static_cast<std::size_t>(slot.j)],
                                               num::DenseSym(slot.msize, std::move(entries))});
            }
            out.details = "structured decomposition found, affine residual " +
                          std::to_string(fv.affine_residual);
            break;
        }
        case num::FeasibilityVerdict::Status::infeasible:
            out.status = SosVerdict::Status::not_sos;
            out.details = "structured decomposition infeasible (verified certificate)";
            break;
        case num::FeasibilityVerdict::Status::inconclusive:
            out.status = SosVerdict::Status::inconclusive;
            out.details = "structured feasibility undecided after " +
                          std::to_string(fv.iterations) + " iterations";
            break;
    }
    return out;
}

}  // namespace dicke
