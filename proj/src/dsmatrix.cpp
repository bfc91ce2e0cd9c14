#include "dicke/dsmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace dicke {

DsMatrix::DsMatrix(int n, int d) : n_(n), d_(d) { validate_shape(n, d); }

double DsMatrix::lambda(const Occupation& alpha) const {
    if (static_cast<int>(alpha.size()) != d_ || !is_occupation(alpha, n_)) {
        throw std::invalid_argument("occupation key does not match state shape");
    }
    auto it = lambda_.find(alpha);
    return it == lambda_.end() ? 0.0 : it->second;
}

void DsMatrix::set_lambda(const Occupation& alpha, double value) {
    if (static_cast<int>(alpha.size()) != d_ || !is_occupation(alpha, n_)) {
        throw std::invalid_argument("occupation key does not match state shape");
    }
    if (value == 0.0) {
        lambda_.erase(alpha);
    } else {
        lambda_[alpha] = value;
    }
}

double DsMatrix::trace() const {
    double out = 0.0;
    for (const auto& [alpha, v] : lambda_) out += v;
    return out;
}

int DsMatrix::rank(double tol) const {
    int out = 0;
    for (const auto& [alpha, v] : lambda_) {
        if (std::abs(v) > tol) ++out;
    }
    return out;
}

bool DsMatrix::is_psd(double tol) const {
    for (const auto& [alpha, v] : lambda_) {
        if (v < -tol) return false;
    }
    return true;
}

SymTensor q_view(const DsMatrix& X) {
    SymTensor out(X.order(), X.dim());
    for (const auto& [alpha, v] : X.lambdas()) {
        out.set(alpha, v / to_double(multinomial(X.order(), alpha)));
    }
    return out;
}

DsMatrix lambda_from_q(const SymTensor& Q) {
    DsMatrix out(Q.order(), Q.dim());
    for (const auto& [alpha, v] : Q.values()) {
        out.set_lambda(alpha, v * to_double(multinomial(Q.order(), alpha)));
    }
    return out;
}

SymTensor w_view(const DsMatrix& X) {
    SymTensor out(X.order(), X.dim());
    for (const auto& [alpha, v] : X.lambdas()) out.set(alpha, v);
    return out;
}

double hs_inner(const DsMatrix& X, const DsMatrix& Y) {
    if (X.order() != Y.order() || X.dim() != Y.dim()) {
        throw std::invalid_argument("state shape mismatch in hs_inner");
    }
    return euclid_inner(q_view(X), w_view(Y));
}

num::DenseSym to_dense(const DsMatrix& X) {
    const int n = X.order();
    const int d = X.dim();
    double sized = std::pow(static_cast<double>(d), n);
    if (sized > 4096.0) throw std::domain_error("dense export too large for desk scale");
    const std::size_t size = static_cast<std::size_t>(sized + 0.5);

    // Occupation of every flat index, big-endian legs.
    std::vector<Occupation> occs(size);
    std::vector<int> index(static_cast<std::size_t>(n), 0);
    for (std::size_t flat = 0; flat < size; ++flat) {
        std::size_t rest = flat;
        for (int leg = n - 1; leg >= 0; --leg) {
            index[static_cast<std::size_t>(leg)] = static_cast<int>(rest % d);
            rest /= static_cast<std::size_t>(d);
        }
        occs[flat] = occupation_of(index, d);
    }

    SymTensor q = q_view(X);
    num::DenseSym out(size);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i; j < size; ++j) {
            if (occs[i] == occs[j]) out.set(i, j, q.at(occs[i]));
        }
    }
    return out;
}

DsMatrix pure_dicke(const Occupation& alpha) {
    DsMatrix out(order_of(alpha), static_cast<int>(alpha.size()));
    out.set_lambda(alpha, 1.0);
    return out;
}

DsMatrix ds_marginal(const DsMatrix& X, int r) {
    return lambda_from_q(marginal(q_view(X), r));
}

SymTensor dicke_marginal_closed_form(const Occupation& alpha, int r) {
    const int n = order_of(alpha);
    const int d = static_cast<int>(alpha.size());
    if (r < 0 || r >= n) throw std::invalid_argument("need 0 <= r < n");
    validate_shape(n, d);

    SymTensor out(n - r, d);
    Occupation delta(static_cast<std::size_t>(d), 0);
    const double denom = to_double(multinomial(n, alpha));
    for (const Occupation& beta : enumerate_occupations(n - r, d)) {
        bool inside = true;
        for (int l = 0; l < d && inside; ++l) {
            int g = alpha[static_cast<std::size_t>(l)] - beta[static_cast<std::size_t>(l)];
            if (g < 0) inside = false;
            delta[static_cast<std::size_t>(l)] = g;
        }
        if (!inside) continue;
        out.set(beta, to_double(multinomial(r, delta)) / denom);
    }
    return out;
}

NptVerdict npt_2body(const Occupation& alpha) {
    NptVerdict out;
    const int d = static_cast<int>(alpha.size());
    const int n = order_of(alpha);
    std::vector<int> support;
    for (int l = 0; l < d; ++l) {
        if (alpha[static_cast<std::size_t>(l)] > 0) support.push_back(l);
    }
    if (support.size() < 2) return out;  // product state, separable

    SymTensor two_body = dicke_marginal_closed_form(alpha, n - 2);
    for (std::size_t a = 0; a < support.size() && !out.npt; ++a) {
        for (std::size_t b = a + 1; b < support.size() && !out.npt; ++b) {
            const int l = support[a];
            const int m = support[b];
            Occupation key(static_cast<std::size_t>(d), 0);
            key[static_cast<std::size_t>(l)] = 2;
            double qll = two_body.at(key);
            key[static_cast<std::size_t>(l)] = 0;
            key[static_cast<std::size_t>(m)] = 2;
            double qmm = two_body.at(key);
            key[static_cast<std::size_t>(m)] = 1;
            key[static_cast<std::size_t>(l)] = 1;
            double qlm = two_body.at(key);
            double gap = qlm * qlm - qll * qmm;
            if (gap > 0.0) {
                out.npt = true;
                out.l = l;
                out.m = m;
                out.gap = gap;
            }
        }
    }
    return out;
}

DsMatrix sd_orbit_state(const Occupation& mu) {
    std::vector<Occupation> orb = orbit(mu);
    DsMatrix out(order_of(mu), static_cast<int>(mu.size()));
    const double weight = 1.0 / static_cast<double>(orb.size());
    for (const Occupation& alpha : orb) out.set_lambda(alpha, weight);
    return out;
}

DsMatrix sd_symmetrize(const DsMatrix& X) {
    DsMatrix out(X.order(), X.dim());
    for (const Occupation& mu : partitions(X.order(), X.dim())) {
        std::vector<Occupation> orb = orbit(mu);
        double total = 0.0;
        for (const Occupation& alpha : orb) total += X.lambda(alpha);
        const double avg = total / static_cast<double>(orb.size());
        for (const Occupation& alpha : orb) out.set_lambda(alpha, avg);
    }
    return out;
}

std::map<Occupation, double> sd_coordinates(const DsMatrix& X, double tol) {
    std::map<Occupation, double> out;
    for (const Occupation& mu : partitions(X.order(), X.dim())) {
        std::vector<Occupation> orb = orbit(mu);
        double lo = X.lambda(orb.front());
        double hi = lo;
        double total = 0.0;
        for (const Occupation& alpha : orb) {
            double v = X.lambda(alpha);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            total += v;
        }
        if (hi - lo > tol) {
            throw std::invalid_argument("state is not S_d-invariant (orbit spread " +
                                        std::to_string(hi - lo) + " at " +
                                        format_occupation(mu) + ")");
        }
        out[mu] = total;
    }
    return out;
}

}  // namespace dicke
