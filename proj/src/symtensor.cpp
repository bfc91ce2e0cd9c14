#include "dicke/symtensor.hpp"

#include <cmath>
#include <stdexcept>

namespace dicke {

SymTensor::SymTensor(int n, int d) : n_(n), d_(d) { validate_shape(n, d); }

void SymTensor::check_key(const Occupation& alpha) const {
    if (static_cast<int>(alpha.size()) != d_ || !is_occupation(alpha, n_)) {
        throw std::invalid_argument("occupation key does not match tensor shape " +
                                    format_occupation(alpha));
    }
}

double SymTensor::at(const Occupation& alpha) const {
    check_key(alpha);
    auto it = values_.find(alpha);
    return it == values_.end() ? 0.0 : it->second;
}

void SymTensor::set(const Occupation& alpha, double value) {
    check_key(alpha);
    if (value == 0.0) {
        values_.erase(alpha);
    } else {
        values_[alpha] = value;
    }
}

void SymTensor::add(const Occupation& alpha, double value) {
    set(alpha, at(alpha) + value);
}

void SymTensor::scale(double factor) {
    if (factor == 0.0) {
        values_.clear();
        return;
    }
    for (auto& [alpha, v] : values_) v *= factor;
}

void SymTensor::add_scaled(const SymTensor& other, double factor) {
    if (other.n_ != n_ || other.d_ != d_) {
        throw std::invalid_argument("tensor shape mismatch in add_scaled");
    }
    for (const auto& [alpha, v] : other.values_) add(alpha, factor * v);
}

double SymTensor::max_abs() const {
    double out = 0.0;
    for (const auto& [alpha, v] : values_) out = std::max(out, std::abs(v));
    return out;
}

SymTensor from_dense(int n, int d, const std::vector<double>& dense) {
    validate_shape(n, d);
    double size = std::pow(static_cast<double>(d), n);
    if (size > 2e7) throw std::domain_error("dense array too large for desk scale");
    auto expected = static_cast<std::size_t>(size + 0.5);
    if (dense.size() != expected) {
        throw std::invalid_argument("dense array has wrong size for (n,d)");
    }

    // One pass: accumulate per occupation, then divide by the orbit size.
    std::map<Occupation, double> sums;
    std::vector<int> index(static_cast<std::size_t>(n), 0);
    for (std::size_t flat = 0; flat < dense.size(); ++flat) {
        std::size_t rest = flat;
        for (int leg = n - 1; leg >= 0; --leg) {
            index[static_cast<std::size_t>(leg)] = static_cast<int>(rest % d);
            rest /= static_cast<std::size_t>(d);
        }
        sums[occupation_of(index, d)] += dense[flat];
    }
    SymTensor out(n, d);
    for (const auto& [alpha, total] : sums) {
        out.set(alpha, total / to_double(multinomial(n, alpha)));
    }
    return out;
}

SymTensor rank_one(const std::vector<double>& v, int n) {
    const int d = static_cast<int>(v.size());
    SymTensor out(n, d);
    for (const Occupation& alpha : enumerate_occupations(n, d)) {
        double value = 1.0;
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < alpha[static_cast<std::size_t>(j)]; ++k) {
                value *= v[static_cast<std::size_t>(j)];
            }
        }
        out.set(alpha, value);
    }
    return out;
}

double euclid_inner(const SymTensor& T, const SymTensor& S) {
    if (T.order() != S.order() || T.dim() != S.dim()) {
        throw std::invalid_argument("tensor shape mismatch in euclid_inner");
    }
    double out = 0.0;
    for (const auto& [alpha, tv] : T.values()) {
        auto it = S.values().find(alpha);
        if (it == S.values().end()) continue;
        out += to_double(multinomial(T.order(), alpha)) * tv * it->second;
    }
    return out;
}

double weighted_norm(const SymTensor& T) {
    double out = 0.0;
    for (const auto& [alpha, v] : T.values()) {
        out += to_double(multinomial(T.order(), alpha)) * v * v;
    }
    return std::sqrt(out);
}

SymTensor marginal(const SymTensor& T, int r) {
    const int n = T.order();
    const int d = T.dim();
    if (r < 0 || r > n) throw std::invalid_argument("marginal: need 0 <= r <= n");
    if (r == 0) return T;

    SymTensor out(n - r, d);
    const std::vector<Occupation> deltas = enumerate_occupations(r, d);
    for (const Occupation& alpha : enumerate_occupations(n - r, d)) {
        double total = 0.0;
        Occupation beta(alpha);
        for (const Occupation& delta : deltas) {
            for (int j = 0; j < d; ++j) {
                beta[static_cast<std::size_t>(j)] =
                    alpha[static_cast<std::size_t>(j)] + delta[static_cast<std::size_t>(j)];
            }
            auto it = T.values().find(beta);
            if (it == T.values().end()) continue;
            total += to_double(multinomial(r, delta)) * it->second;
        }
        out.set(alpha, total);
    }
    return out;
}

FlatteningMatrix moment_matrix(const SymTensor& T, const Occupation& alpha, int j) {
    const int n = T.order();
    const int d = T.dim();
    if (j < 0 || 2 * j > n) throw std::invalid_argument("moment_matrix: need 0 <= 2j <= n");
    if (static_cast<int>(alpha.size()) != d || !is_occupation(alpha, n - 2 * j)) {
        throw std::invalid_argument("moment_matrix: |alpha| must equal n - 2j");
    }

    FlatteningMatrix out;
    out.alpha = alpha;
    out.j = j;
    out.labels = enumerate_occupations(j, d);
    const std::size_t m = out.labels.size();
    out.matrix = num::DenseSym(m);
    Occupation key(static_cast<std::size_t>(d), 0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            for (int l = 0; l < d; ++l) {
                key[static_cast<std::size_t>(l)] = alpha[static_cast<std::size_t>(l)] +
                                                   out.labels[a][static_cast<std::size_t>(l)] +
                                                   out.labels[b][static_cast<std::size_t>(l)];
            }
            out.matrix.set(a, b, T.at(key));
        }
    }
    return out;
}

SymTensor tensor_with_ones(const SymTensor& T, int r) {
    const int n = T.order();
    const int d = T.dim();
    if (r < 0) throw std::invalid_argument("tensor_with_ones: need r >= 0");
    if (r == 0) return T;

    SymTensor out(n + r, d);
    const std::vector<Occupation> deltas = enumerate_occupations(r, d);
    Occupation gamma(static_cast<std::size_t>(d), 0);
    for (const Occupation& beta : enumerate_occupations(n + r, d)) {
        // Weighted average over which r of the n+r slots carry the ones block.
        double total = 0.0;
        for (const Occupation& delta : deltas) {
            bool inside = true;
            for (int l = 0; l < d && inside; ++l) {
                int g = beta[static_cast<std::size_t>(l)] - delta[static_cast<std::size_t>(l)];
                if (g < 0) inside = false;
                gamma[static_cast<std::size_t>(l)] = g;
            }
            if (!inside) continue;
            auto it = T.values().find(gamma);
            if (it == T.values().end()) continue;
            total += to_double(multinomial(r, delta)) * to_double(multinomial(n, gamma)) *
                     it->second;
        }
        out.set(beta, total / to_double(multinomial(n + r, beta)));
    }
    return out;
}

}  // namespace dicke
