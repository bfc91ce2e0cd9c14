#include "dicke/cones.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

#include "dicke/polynomial.hpp"

namespace dicke {

namespace {

// p_R(v) = sum_alpha multinomial(n,alpha) R_alpha v^alpha.
double tensor_eval(const SymTensor& R, const std::vector<double>& v) {
    double out = 0.0;
    for (const auto& [alpha, val] : R.values()) {
        double term = to_double(multinomial(R.order(), alpha)) * val;
        for (std::size_t j = 0; j < v.size(); ++j) {
            for (int k = 0; k < alpha[j]; ++k) term *= v[j];
        }
        out += term;
    }
    return out;
}

// g_l = sum_{|beta|=n-1} multinomial(n-1,beta) R_{beta+e_l} v^beta, i.e. the
// gradient of p_R at v divided by n.
std::vector<double> tensor_grad_dir(const SymTensor& R, const std::vector<double>& v) {
    const int n = R.order();
    const std::size_t d = v.size();
    std::vector<double> g(d, 0.0);
    Occupation beta;
    for (const auto& [alpha, val] : R.values()) {
        for (std::size_t l = 0; l < d; ++l) {
            if (alpha[l] == 0) continue;
            beta = alpha;
            --beta[l];
            double term = to_double(multinomial(n - 1, beta)) * val;
            for (std::size_t j = 0; j < d; ++j) {
                for (int k = 0; k < beta[j]; ++k) term *= v[j];
            }
            g[l] += term;
        }
    }
    return g;
}

double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Nonnegative symmetric power iteration: ascend <R, v^n> over the unit sphere
// intersected with the nonnegative orthant, with a mild inertial shift to
// damp even-order oscillation.
std::vector<double> best_rank_one(const SymTensor& R, std::vector<double> v) {
    for (double& x : v) x = std::max(x, 0.0);
    double norm = l2_norm(v);
    if (norm == 0.0) return v;
    for (double& x : v) x /= norm;

    for (int it = 0; it < 120; ++it) {
        std::vector<double> g = tensor_grad_dir(R, v);
        double gnorm = l2_norm(g);
        for (std::size_t l = 0; l < v.size(); ++l) {
            g[l] = std::max(g[l] + 0.5 * gnorm * v[l], 0.0);
        }
        double next_norm = l2_norm(g);
        if (next_norm < 1e-300) break;  // no nonnegative ascent direction
        double moved = 0.0;
        for (std::size_t l = 0; l < v.size(); ++l) {
            g[l] /= next_norm;
            moved = std::max(moved, std::abs(g[l] - v[l]));
        }
        v.swap(g);
        if (moved < 1e-13) break;
    }
    return v;
}

// Joint weight refit: nonnegative least squares over the current directions
// via cyclic coordinate descent on the Gram system (G_pq = <v_p,v_q>^n).
void refit_weights(const SymTensor& T, std::vector<CpFactor>& factors) {
    const std::size_t m = factors.size();
    if (m == 0) return;
    const int n = T.order();
    std::vector<double> G(m * m), b(m);
    for (std::size_t p = 0; p < m; ++p) {
        b[p] = tensor_eval(T, factors[p].vec);
        for (std::size_t q = 0; q < m; ++q) {
            double dot = 0.0;
            for (std::size_t l = 0; l < factors[p].vec.size(); ++l) {
                dot += factors[p].vec[l] * factors[q].vec[l];
            }
            G[p * m + q] = std::pow(dot, n);
        }
    }
    for (int it = 0; it < 400; ++it) {
        double moved = 0.0;
        for (std::size_t q = 0; q < m; ++q) {
            double rest = b[q];
            for (std::size_t p = 0; p < m; ++p) {
                if (p != q) rest -= G[q * m + p] * factors[p].weight;
            }
            double next = G[q * m + q] > 0.0 ? std::max(rest / G[q * m + q], 0.0) : 0.0;
            moved = std::max(moved, std::abs(next - factors[q].weight));
            factors[q].weight = next;
        }
        if (moved < 1e-15) break;
    }
}

SymTensor residual_of(const SymTensor& T, const std::vector<CpFactor>& factors) {
    SymTensor R = T;
    for (const CpFactor& f : factors) R.add_scaled(rank_one(f.vec, T.order()), -f.weight);
    return R;
}

// Joint polish of all factors at once: projected gradient descent on the
// unnormalized parametrization z_q = w_q^{1/n} v_q >= 0 with Barzilai-Borwein
// steps and monotone backtracking.  Escapes the alternating-fit swamps.
void joint_descent(const SymTensor& T, std::vector<CpFactor>& factors, int iters) {
    const int n = T.order();
    const std::size_t d = static_cast<std::size_t>(T.dim());
    const std::size_t m = factors.size();
    if (m == 0) return;

    std::vector<double> z(m * d);
    for (std::size_t q = 0; q < m; ++q) {
        double scale = std::pow(std::max(factors[q].weight, 0.0), 1.0 / n);
        for (std::size_t l = 0; l < d; ++l) z[q * d + l] = scale * factors[q].vec[l];
    }

    auto residual_at = [&](const std::vector<double>& zz) {
        SymTensor R = T;
        std::vector<double> v(d);
        for (std::size_t q = 0; q < m; ++q) {
            for (std::size_t l = 0; l < d; ++l) v[l] = zz[q * d + l];
            R.add_scaled(rank_one(v, n), -1.0);
        }
        return R;
    };

    SymTensor R = residual_at(z);
    double f = euclid_inner(R, R);
    std::vector<double> g(m * d), g_prev, z_prev;
    std::deque<double> recent{f};  // nonmonotone line-search reference window
    double gamma = 1e-3;
    int flat = 0;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> v(d);
        for (std::size_t q = 0; q < m; ++q) {
            for (std::size_t l = 0; l < d; ++l) v[l] = z[q * d + l];
            std::vector<double> gd = tensor_grad_dir(R, v);
            for (std::size_t l = 0; l < d; ++l) g[q * d + l] = -2.0 * n * gd[l];
        }
        if (!z_prev.empty()) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t i = 0; i < z.size(); ++i) {
                double s = z[i] - z_prev[i];
                ss += s * s;
                sy += s * (g[i] - g_prev[i]);
            }
            gamma = (sy > 1e-300) ? ss / sy : gamma * 2.0;
            gamma = std::min(std::max(gamma, 1e-12), 1e6);
        }
        double f_ref = *std::max_element(recent.begin(), recent.end());
        double f_new = f;
        std::vector<double> z_new(z.size());
        SymTensor R_new = R;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            for (std::size_t i = 0; i < z.size(); ++i) {
                z_new[i] = std::max(z[i] - gamma * g[i], 0.0);
            }
            R_new = residual_at(z_new);
            f_new = euclid_inner(R_new, R_new);
            if (f_new < f_ref) {
                accepted = true;
                break;
            }
            gamma *= 0.25;
        }
        if (!accepted) break;
        z_prev = z;
        g_prev = g;
        z = z_new;
        R = R_new;
        flat = (f - f_new < 1e-18 * std::max(f, 1.0)) ? flat + 1 : 0;
        f = f_new;
        if (flat > 20) break;
        recent.push_back(f);
        if (recent.size() > 8) recent.pop_front();
    }

    for (std::size_t q = 0; q < m; ++q) {
        std::vector<double> v(d);
        for (std::size_t l = 0; l < d; ++l) v[l] = z[q * d + l];
        double norm = l2_norm(v);
        if (norm == 0.0) {
            factors[q].weight = 0.0;
            continue;
        }
        for (double& x : v) x /= norm;
        factors[q].vec = v;
        factors[q].weight = std::pow(norm, n);
    }
}

// Gauss-quadrature seed for qubit tensors.  The diagonal sequence
// m_k = T_(n-k,k) of a completely positive qubit tensor is a Stieltjes
// moment sequence, so Golub-Welsch applies: Cholesky the Hankel moment
// matrix, symmetrize the shifted Hankel into the Jacobi operator, and read
// nodes and weights off one symmetric eigendecomposition.  For members the
// quadrature reproduces every moment (the even-order tail defect is the
// classical nonnegative Gauss error and becomes an atom on the second axis),
// so the seed usually *is* the decomposition; for non-members it is just a
// starting point and the residual check downstream stays authoritative.
std::vector<CpFactor> qubit_moment_seed(const SymTensor& T) {
    if (T.dim() != 2) return {};
    const int n = T.order();
    std::vector<double> m(static_cast<std::size_t>(n) + 1, 0.0);
    double scale = 0.0;
    for (int k = 0; k <= n; ++k) {
        Occupation alpha = {n - k, k};
        m[static_cast<std::size_t>(k)] = T.at(alpha);
        scale = std::max(scale, std::fabs(m[static_cast<std::size_t>(k)]));
    }
    std::vector<CpFactor> out;
    if (scale == 0.0 || m[0] <= 0.0) return out;

    for (int r = (n + 1) / 2; r >= 1; --r) {
        const std::size_t rs = static_cast<std::size_t>(r);
        // Lower Cholesky factor of the r x r Hankel matrix H_ij = m_{i+j}.
        std::vector<double> L(rs * rs, 0.0);
        bool ok = true;
        for (std::size_t i = 0; i < rs && ok; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double sum = m[i + j];
                for (std::size_t t = 0; t < j; ++t) {
                    sum -= L[i * rs + t] * L[j * rs + t];
                }
                if (i == j) {
                    if (sum <= 1e-11 * scale) {
                        ok = false;
                        break;
                    }
                    L[i * rs + i] = std::sqrt(sum);
                } else {
                    L[i * rs + j] = sum / L[j * rs + j];
                }
            }
        }
        if (!ok) continue;  // numerically rank-deficient: fewer atoms

        // J = L^{-1} Hs L^{-T} with Hs_ij = m_{i+j+1}: first X = L^{-1} Hs
        // (forward solves per column), then J = X L^{-T} (solves per row).
        std::vector<double> X(rs * rs, 0.0);
        for (std::size_t c = 0; c < rs; ++c) {
            for (std::size_t i = 0; i < rs; ++i) {
                double sum = m[i + c + 1];
                for (std::size_t t = 0; t < i; ++t) {
                    sum -= L[i * rs + t] * X[t * rs + c];
                }
                X[i * rs + c] = sum / L[i * rs + i];
            }
        }
        std::vector<double> full(rs * rs, 0.0);
        for (std::size_t i = 0; i < rs; ++i) {
            std::vector<double> zrow(rs);
            for (std::size_t c = 0; c < rs; ++c) {
                double sum = X[i * rs + c];
                for (std::size_t t = 0; t < c; ++t) {
                    sum -= L[c * rs + t] * zrow[t];
                }
                zrow[c] = sum / L[c * rs + c];
            }
            for (std::size_t c = 0; c < rs; ++c) full[i * rs + c] = zrow[c];
        }
        num::DenseSym J(rs);
        for (std::size_t i = 0; i < rs; ++i) {
            for (std::size_t c = 0; c <= i; ++c) {
                J.set(i, c, 0.5 * (full[i * rs + c] + full[c * rs + i]));
            }
        }

        num::EigResult eig = num::sym_eig(J);
        bool usable = true;
        std::vector<CpFactor> atoms;
        double tail = m[static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i < rs; ++i) {
            double node = eig.eigenvalues[i];
            if (node < -1e-8) {
                usable = false;
                break;
            }
            node = std::max(node, 0.0);
            double first = eig.eigenvectors[i][0];
            double mass = m[0] * first * first;
            if (mass <= 0.0) continue;
            tail -= mass * std::pow(node, n);
            std::vector<double> v = {1.0, node};
            double vnorm = l2_norm(v);
            for (double& x : v) x /= vnorm;
            atoms.push_back({mass * std::pow(vnorm, n), v});
        }
        if (!usable) continue;
        // Even order leaves the top moment to a second-axis atom; the Gauss
        // error term makes the defect nonnegative for genuine members.
        if (tail > 1e-14 * scale) {
            atoms.push_back({tail, {0.0, 1.0}});
        }
        out = std::move(atoms);
        break;
    }
    return out;
}

struct CpAttempt {
    double residual = 0.0;
    std::vector<CpFactor> factors;
};

// Initialization styles for one decomposition attempt: Gauss-quadrature
// extraction from the diagonal moment sequence (qubits only), greedy
// deflation seeded from the occupation centroid, greedy deflation seeded at
// random, or an overcomplete bundle of random factors polished jointly.
enum class CpInit { qubit_moments, greedy_centroid, greedy_random, overcomplete_random };

CpAttempt cp_attempt(const SymTensor& T, int max_rank, std::mt19937_64& rng,
                     CpInit init, double tnorm) {
    const int n = T.order();
    const int d = T.dim();
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto greedy_factor = [&](const SymTensor& R, int index) -> CpFactor {
        std::vector<double> v0(static_cast<std::size_t>(d), 0.0);
        if (init == CpInit::greedy_centroid && index == 0) {
            // Start from the order-1 marginal: the occupation centroid.
            SymTensor m = marginal(R, n - 1);
            for (int l = 0; l < d; ++l) {
                Occupation e(static_cast<std::size_t>(d), 0);
                e[static_cast<std::size_t>(l)] = 1;
                v0[static_cast<std::size_t>(l)] = std::max(m.at(e), 0.0);
            }
            if (l2_norm(v0) == 0.0) v0.assign(static_cast<std::size_t>(d), 1.0);
        } else {
            for (double& x : v0) x = unif(rng);
        }
        std::vector<double> v = best_rank_one(R, v0);
        return {std::max(tensor_eval(R, v), 0.0), v};
    };

    CpAttempt out;
    if (init == CpInit::qubit_moments) {
        out.factors = qubit_moment_seed(T);
        if (out.factors.empty()) {
            init = CpInit::greedy_centroid;  // degenerate moment sequence
        } else {
            refit_weights(T, out.factors);
        }
    }
    if (init == CpInit::qubit_moments) {
        // seeded above; refinement below only has to confirm it
    } else if (init == CpInit::overcomplete_random) {
        double level = weighted_norm(T) / std::max(max_rank, 1);
        for (int q = 0; q < max_rank; ++q) {
            std::vector<double> v(static_cast<std::size_t>(d));
            for (double& x : v) x = unif(rng);
            double norm = l2_norm(v);
            for (double& x : v) x /= norm;
            out.factors.push_back({level, v});
        }
        refit_weights(T, out.factors);
    } else {
        SymTensor R = T;
        for (int q = 0; q < max_rank; ++q) {
            if (weighted_norm(R) <= 1e-10 * tnorm) break;
            CpFactor f = greedy_factor(R, q);
            if (f.weight <= 1e-12 * std::max(tnorm, 1.0)) break;
            R.add_scaled(rank_one(f.vec, n), -f.weight);
            out.factors.push_back(std::move(f));
        }
    }

    // Refinement rounds: a few alternating direction/weight sweeps to settle
    // the greedy seed, then a joint projected-gradient polish over every
    // factor at once.  Between rounds, prune dead factors and re-seed from
    // the residual while the rank budget allows.
    auto prune = [&] {
        out.factors.erase(
            std::remove_if(out.factors.begin(), out.factors.end(),
                           [&](const CpFactor& f) {
                               return f.weight <= 1e-13 * std::max(tnorm, 1.0);
                           }),
            out.factors.end());
    };
    // Overcomplete fits stall by splitting one true direction across two
    // nearly parallel factors; collapsing such pairs restores the exact-rank
    // geometry where the alternating and joint polishes converge.
    auto merge_parallel = [&] {
        bool merged = false;
        for (std::size_t a = 0; a < out.factors.size(); ++a) {
            for (std::size_t b = a + 1; b < out.factors.size();) {
                double dot = 0.0;
                for (int l = 0; l < d; ++l) {
                    dot += out.factors[a].vec[static_cast<std::size_t>(l)] *
                           out.factors[b].vec[static_cast<std::size_t>(l)];
                }
                if (dot > 1.0 - 2e-3) {
                    CpFactor& keep = out.factors[a];
                    const CpFactor& drop = out.factors[b];
                    for (int l = 0; l < d; ++l) {
                        keep.vec[static_cast<std::size_t>(l)] =
                            keep.weight * keep.vec[static_cast<std::size_t>(l)] +
                            drop.weight * drop.vec[static_cast<std::size_t>(l)];
                    }
                    double norm = l2_norm(keep.vec);
                    if (norm > 0.0) {
                        for (double& x : keep.vec) x /= norm;
                    }
                    keep.weight += drop.weight;
                    out.factors.erase(out.factors.begin() +
                                      static_cast<std::ptrdiff_t>(b));
                    merged = true;
                } else {
                    ++b;
                }
            }
        }
        if (merged) refit_weights(T, out.factors);
        return merged;
    };
    double res = weighted_norm(residual_of(T, out.factors));
    for (int round = 0;
         round < 6 && !out.factors.empty() && res > 1e-10 * tnorm; ++round) {
        for (int sweep = 0; sweep < 8; ++sweep) {
            for (CpFactor& f : out.factors) {
                SymTensor Rq = residual_of(T, out.factors);
                Rq.add_scaled(rank_one(f.vec, n), f.weight);  // factor's own target
                std::vector<double> v = best_rank_one(Rq, f.vec);
                f.vec = v;
                f.weight = std::max(tensor_eval(Rq, v), 0.0);
            }
            refit_weights(T, out.factors);
        }
        joint_descent(T, out.factors, 2000);
        refit_weights(T, out.factors);
        prune();
        if (merge_parallel()) {
            // Re-settle the collapsed factors before judging progress.
            for (int sweep = 0; sweep < 8; ++sweep) {
                for (CpFactor& f : out.factors) {
                    SymTensor Rq = residual_of(T, out.factors);
                    Rq.add_scaled(rank_one(f.vec, n), f.weight);
                    std::vector<double> v = best_rank_one(Rq, f.vec);
                    f.vec = v;
                    f.weight = std::max(tensor_eval(Rq, v), 0.0);
                }
                refit_weights(T, out.factors);
            }
            joint_descent(T, out.factors, 2000);
            refit_weights(T, out.factors);
            prune();
        }
        double before = res;
        res = weighted_norm(residual_of(T, out.factors));
        if (res <= 1e-10 * tnorm) break;
        bool stalled = before - res < 1e-12 * std::max(tnorm, 1.0);
        if (static_cast<int>(out.factors.size()) < max_rank &&
            (round == 0 || !stalled)) {
            SymTensor rem = residual_of(T, out.factors);
            CpFactor f = greedy_factor(rem, -1);
            if (f.weight > 1e-12 * std::max(tnorm, 1.0)) {
                out.factors.push_back(std::move(f));
                continue;
            }
        }
        if (stalled) {
            // Kick every factor off the stalled point and keep going.
            for (CpFactor& f : out.factors) {
                for (double& x : f.vec) x = std::max(x + 0.05 * (unif(rng) - 0.5), 0.0);
                double norm = l2_norm(f.vec);
                if (norm == 0.0) continue;
                for (double& x : f.vec) x /= norm;
            }
            refit_weights(T, out.factors);
        }
    }
    out.residual = weighted_norm(residual_of(T, out.factors));
    return out;
}

}  // namespace

ConeVerdict is_nn(const SymTensor& T, double eps) {
    ConeVerdict out;
    out.cone = "NN";
    out.status = ConeVerdict::Status::member;
    double worst = 0.0;
    const Occupation* worst_alpha = nullptr;
    for (const auto& [alpha, v] : T.values()) {
        if (v < worst) {
            worst = v;
            worst_alpha = &alpha;
        }
    }
    out.min_value = worst;
    if (worst < -eps) {
        out.status = ConeVerdict::Status::non_member;
        out.bad_alpha = *worst_alpha;
        out.details = "negative entry at " + format_occupation(out.bad_alpha);
    }
    return out;
}

ConeVerdict is_mom(const SymTensor& T, int k, double eps) {
    const int n = T.order();
    const int d = T.dim();
    if (k < 0 || 2 * k > n) {
        throw std::invalid_argument("is_mom: need 0 <= k <= n/2");
    }

    ConeVerdict out;
    out.cone = "Mom";
    out.level = k;

    ConeVerdict nn = is_nn(T, eps);
    if (!nn.member()) {
        out.status = ConeVerdict::Status::non_member;
        out.bad_alpha = nn.bad_alpha;
        out.bad_j = 0;
        out.min_value = nn.min_value;
        out.details = nn.details;
        return out;
    }

    out.status = ConeVerdict::Status::member;
    out.min_value = 0.0;
    for (int j = 1; j <= k; ++j) {
        for (const Occupation& alpha : enumerate_occupations(n - 2 * j, d)) {
            FlatteningMatrix F = moment_matrix(T, alpha, j);
            num::PsdResult r = num::psd_check(F.matrix, eps);
            out.min_value = std::min(out.min_value, r.min_eigenvalue);
            if (!r.psd) {
                out.status = ConeVerdict::Status::non_member;
                out.bad_alpha = alpha;
                out.bad_j = j;
                out.eigvec = r.min_eigenvector;
                out.details = "moment matrix at " + format_occupation(alpha) +
                              ", j=" + std::to_string(j) + " has eigenvalue " +
                              std::to_string(r.min_eigenvalue);
                return out;
            }
        }
    }
    return out;
}

CpResult cp_decompose(const SymTensor& T, int max_rank, int restarts, std::uint64_t seed) {
    const int n = T.order();
    const int d = T.dim();
    if (max_rank <= 0) max_rank = 2 * static_cast<int>(sym_dim(n, d));
    if (restarts <= 0) restarts = 32;

    CpResult out;
    out.verdict.cone = "CP";

    ConeVerdict nn = is_nn(T, 1e-12);
    if (!nn.member()) {
        out.verdict.status = ConeVerdict::Status::non_member;
        out.verdict.bad_alpha = nn.bad_alpha;
        out.verdict.min_value = nn.min_value;
        out.verdict.details = "not entrywise nonnegative; CP is impossible";
        return out;
    }

    const double tnorm = weighted_norm(T);
    if (tnorm == 0.0) {
        out.verdict.status = ConeVerdict::Status::member;
        out.verdict.details = "zero tensor";
        out.residual = 0.0;
        return out;
    }

    double best = 1e300;
    for (int s = 0; s < restarts; ++s) {
        std::mt19937_64 rng(num::derive_seed(seed, static_cast<std::uint64_t>(s)));
        CpInit init = (s == 0) ? (d == 2 ? CpInit::qubit_moments : CpInit::greedy_centroid)
                      : (s % 2 == 1) ? CpInit::overcomplete_random
                                     : CpInit::greedy_random;
        CpAttempt attempt = cp_attempt(T, max_rank, rng, init, tnorm);
        double rel = attempt.residual / tnorm;
        if (rel < best) {
            best = rel;
            out.factors = std::move(attempt.factors);
        }
        if (best <= 1e-9) break;
    }
    out.residual = best;
    if (best <= 1e-7) {
        out.verdict.status = ConeVerdict::Status::member;
        out.verdict.details = "decomposition with " + std::to_string(out.factors.size()) +
                              " factors, relative residual " + std::to_string(best);
    } else {
        out.verdict.status = ConeVerdict::Status::inconclusive;
        out.verdict.details = "no decomposition found within budget (residual " +
                              std::to_string(best) + ")";
    }
    return out;
}

ConeVerdict qubit_separability(const SymTensor& T, double eps) {
    if (T.dim() != 2) {
        throw std::invalid_argument("qubit_separability requires d = 2");
    }
    const int n = T.order();

    ConeVerdict out;
    out.cone = "Sep2";
    ConeVerdict nn = is_nn(T, eps);
    if (!nn.member()) {
        out.status = ConeVerdict::Status::non_member;
        out.bad_alpha = nn.bad_alpha;
        out.bad_j = 0;
        out.min_value = nn.min_value;
        out.details = nn.details;
        return out;
    }

    // The two maximal effective moment matrices: their principal submatrices
    // exhaust every smaller slice, so these two decide membership exactly.
    std::vector<std::pair<Occupation, int>> slices;
    if (n % 2 == 0) {
        slices.push_back({{0, 0}, n / 2});
        if (n >= 2) slices.push_back({{1, 1}, n / 2 - 1});
    } else {
        slices.push_back({{1, 0}, (n - 1) / 2});
        slices.push_back({{0, 1}, (n - 1) / 2});
    }

    out.status = ConeVerdict::Status::member;
    out.min_value = 0.0;
    for (const auto& [alpha, j] : slices) {
        FlatteningMatrix F = moment_matrix(T, alpha, j);
        num::PsdResult r = num::psd_check(F.matrix, eps);
        out.min_value = std::min(out.min_value, r.min_eigenvalue);
        if (!r.psd) {
            out.status = ConeVerdict::Status::non_member;
            out.bad_alpha = alpha;
            out.bad_j = j;
            out.eigvec = r.min_eigenvector;
            out.details = "maximal moment matrix at " + format_occupation(alpha) +
                          ", j=" + std::to_string(j) + " has eigenvalue " +
                          std::to_string(r.min_eigenvalue);
            return out;
        }
    }
    return out;
}

SimplexMin copositive_min(const SymTensor& T, int grid_depth) {
    const int d = T.dim();
    HomPoly p = poly_from_tensor(T);

    // Base grid m/N over the simplex; N divisible by 6 keeps the classical
    // equal-weight zeros (halves and thirds) on exact grid points.
    int N = 12;
    while (N > 6 && to_double(sym_dim(N, d)) > 2e5) N -= 6;

    using Scored = std::pair<double, std::vector<double>>;
    auto better = [](const Scored& a, const Scored& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    };
    const std::size_t kKeep = 6;
    std::vector<Scored> keep;
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    for (const Occupation& m : enumerate_occupations(N, d)) {
        for (int l = 0; l < d; ++l) {
            x[static_cast<std::size_t>(l)] =
                static_cast<double>(m[static_cast<std::size_t>(l)]) / N;
        }
        keep.push_back({p.evaluate(x), x});
        std::sort(keep.begin(), keep.end(), better);
        if (keep.size() > kKeep) keep.resize(kKeep);
    }

    // Step-shrinking neighborhood refinement around the leaders.
    double h = 1.0 / N;
    for (int depth = 0; depth < grid_depth; ++depth) {
        h /= 3.0;
        std::vector<Scored> next = keep;
        for (const Scored& s : keep) {
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    if (i == j) continue;
                    double give = std::min(h, s.second[static_cast<std::size_t>(j)]);
                    if (give <= 0.0) continue;
                    std::vector<double> y = s.second;
                    y[static_cast<std::size_t>(i)] += give;
                    y[static_cast<std::size_t>(j)] -= give;
                    next.push_back({p.evaluate(y), y});
                }
            }
        }
        std::sort(next.begin(), next.end(), better);
        if (next.size() > kKeep) next.resize(kKeep);
        keep.swap(next);
    }

    // Projected coordinate-pair descent with step halving from the leader.
    Scored best = keep.front();
    double step = h;
    while (step > 1e-10) {
        bool improved = false;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                double give = std::min(step, best.second[static_cast<std::size_t>(j)]);
                if (give <= 0.0) continue;
                std::vector<double> y = best.second;
                y[static_cast<std::size_t>(i)] += give;
                y[static_cast<std::size_t>(j)] -= give;
                double val = p.evaluate(y);
                if (val < best.first) {
                    best = {val, y};
                    improved = true;
                }
            }
        }
        if (!improved) step /= 2.0;
    }

    SimplexMin out;
    out.value = best.first;
    out.argmin = best.second;
    return out;
}

}  // namespace dicke
