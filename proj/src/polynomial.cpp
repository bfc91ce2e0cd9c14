#include "dicke/polynomial.hpp"

#include <cmath>
#include <stdexcept>

#include "dicke/rational.hpp"

namespace dicke {

namespace {
constexpr double kCoeffDrop = 1e-14;
}

HomPoly::HomPoly(int d, int deg) : d_(d), deg_(deg) {
    if (d < 1) throw std::invalid_argument("polynomial needs d >= 1");
    if (deg < 0) throw std::invalid_argument("polynomial needs deg >= 0");
}

void HomPoly::check_key(const Occupation& exponent) const {
    if (static_cast<int>(exponent.size()) != d_ || !is_occupation(exponent, deg_)) {
        throw std::invalid_argument("exponent does not match polynomial shape " +
                                    format_occupation(exponent));
    }
}

double HomPoly::coeff(const Occupation& exponent) const {
    check_key(exponent);
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? 0.0 : it->second;
}

void HomPoly::set_coeff(const Occupation& exponent, double value) {
    check_key(exponent);
    if (std::abs(value) < kCoeffDrop) {
        coeffs_.erase(exponent);
    } else {
        coeffs_[exponent] = value;
    }
}

void HomPoly::add_coeff(const Occupation& exponent, double value) {
    set_coeff(exponent, coeff(exponent) + value);
}

double HomPoly::evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != d_) {
        throw std::invalid_argument("evaluation point has wrong dimension");
    }
    double out = 0.0;
    for (const auto& [exponent, c] : coeffs_) {
        double term = c;
        for (int j = 0; j < d_; ++j) {
            for (int k = 0; k < exponent[static_cast<std::size_t>(j)]; ++k) {
                term *= x[static_cast<std::size_t>(j)];
            }
        }
        out += term;
    }
    return out;
}

double HomPoly::partial(const std::vector<double>& x, int var) const {
    if (var < 0 || var >= d_) throw std::invalid_argument("partial: bad variable");
    double out = 0.0;
    for (const auto& [exponent, c] : coeffs_) {
        int e = exponent[static_cast<std::size_t>(var)];
        if (e == 0) continue;
        double term = c * e;
        for (int j = 0; j < d_; ++j) {
            int reps = exponent[static_cast<std::size_t>(j)] - (j == var ? 1 : 0);
            for (int k = 0; k < reps; ++k) term *= x[static_cast<std::size_t>(j)];
        }
        out += term;
    }
    return out;
}

HomPoly poly_from_tensor(const SymTensor& T) {
    HomPoly out(T.dim(), T.order());
    for (const auto& [alpha, v] : T.values()) {
        out.set_coeff(alpha, to_double(multinomial(T.order(), alpha)) * v);
    }
    return out;
}

SymTensor tensor_from_poly(const HomPoly& p) {
    SymTensor out(p.degree(), p.dim());
    for (const auto& [alpha, c] : p.coeffs()) {
        out.set(alpha, c / to_double(multinomial(p.degree(), alpha)));
    }
    return out;
}

HomPoly multiply(const HomPoly& p, const HomPoly& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("multiply: dimension mismatch");
    HomPoly out(p.dim(), p.degree() + q.degree());
    Occupation sum(static_cast<std::size_t>(p.dim()), 0);
    for (const auto& [ea, ca] : p.coeffs()) {
        for (const auto& [eb, cb] : q.coeffs()) {
            for (int j = 0; j < p.dim(); ++j) {
                sum[static_cast<std::size_t>(j)] =
                    ea[static_cast<std::size_t>(j)] + eb[static_cast<std::size_t>(j)];
            }
            out.add_coeff(sum, ca * cb);
        }
    }
    return out;
}

HomPoly power_of_linear_sum(int d, int r) {
    if (r < 0) throw std::invalid_argument("power_of_linear_sum: r >= 0");
    HomPoly out(d, r);
    for (const Occupation& alpha : enumerate_occupations(r, d)) {
        out.set_coeff(alpha, to_double(multinomial(r, alpha)));
    }
    return out;
}

HomPoly norm_square_power(int d, int r) {
    if (r < 0) throw std::invalid_argument("norm_square_power: r >= 0");
    HomPoly out(d, 2 * r);
    Occupation doubled(static_cast<std::size_t>(d), 0);
    for (const Occupation& alpha : enumerate_occupations(r, d)) {
        for (int j = 0; j < d; ++j) {
            doubled[static_cast<std::size_t>(j)] = 2 * alpha[static_cast<std::size_t>(j)];
        }
        out.set_coeff(doubled, to_double(multinomial(r, alpha)));
    }
    return out;
}

HomPoly substitute_squares(const HomPoly& p) {
    HomPoly out(p.dim(), 2 * p.degree());
    Occupation doubled(static_cast<std::size_t>(p.dim()), 0);
    for (const auto& [exponent, c] : p.coeffs()) {
        for (int j = 0; j < p.dim(); ++j) {
            doubled[static_cast<std::size_t>(j)] = 2 * exponent[static_cast<std::size_t>(j)];
        }
        out.set_coeff(doubled, c);
    }
    return out;
}

namespace {

// Exact phase-1 simplex with Bland's rule over rationals.  Decides whether
// sum_s w_s support_s = target, sum_s w_s = 1, w >= 0 is solvable.
bool hull_lp_feasible(const std::vector<Occupation>& support, const Occupation& target) {
    const std::size_t cols = support.size();
    const std::size_t d = target.size();
    const std::size_t rows = d + 1;
    const std::size_t width = cols + rows + 1;

    // Tableau [original | artificial | rhs]; rhs is nonnegative by
    // construction (occupations have nonnegative entries).
    std::vector<Rat> t(width * (rows + 1));
    auto tab = [&](std::size_t i, std::size_t j) -> Rat& { return t[i * width + j]; };

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            tab(i, j) = Rat(i < d ? support[j][i] : 1);
        }
        tab(i, cols + i) = Rat(1);
        tab(i, cols + rows) = Rat(i < d ? target[i] : 1);
    }
    for (std::size_t j = 0; j < cols; ++j) {
        Rat s;
        for (std::size_t i = 0; i < rows; ++i) s = s + tab(i, j);
        tab(rows, j) = -s;
    }
    {
        Rat s;
        for (std::size_t i = 0; i < rows; ++i) s = s + tab(i, cols + rows);
        tab(rows, cols + rows) = -s;
    }

    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

    while (true) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < cols + rows; ++j) {
            if (tab(rows, j).sign() < 0) {
                enter = j;
                break;
            }
        }
        if (enter == width) break;

        std::size_t leave = rows;
        Rat best;
        for (std::size_t i = 0; i < rows; ++i) {
            if (tab(i, enter).sign() <= 0) continue;
            Rat ratio = tab(i, cols + rows) / tab(i, enter);
            if (leave == rows || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == rows) break;

        Rat piv = tab(leave, enter);
        for (std::size_t j = 0; j < width; ++j) tab(leave, j) = tab(leave, j) / piv;
        for (std::size_t i = 0; i <= rows; ++i) {
            if (i == leave) continue;
            Rat f = tab(i, enter);
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < width; ++j) {
                tab(i, j) = tab(i, j) - f * tab(leave, j);
            }
        }
        basis[leave] = enter;
    }

    return tab(rows, cols + rows).is_zero();  // phase-1 optimum == 0 exactly
}

}  // namespace

bool in_convex_hull(const std::vector<Occupation>& support, const Occupation& target) {
    if (support.empty()) return false;
    for (const Occupation& s : support) {
        if (s.size() != target.size()) {
            throw std::invalid_argument("hull membership: dimension mismatch");
        }
    }
    return hull_lp_feasible(support, target);
}

std::vector<Occupation> half_newton_basis(const HomPoly& p) {
    if (p.degree() % 2 != 0) {
        throw std::invalid_argument("half_newton_basis needs even degree");
    }
    std::vector<Occupation> support;
    support.reserve(p.coeffs().size());
    for (const auto& [exponent, c] : p.coeffs()) {
        (void)c;
        support.push_back(exponent);
    }

    std::vector<Occupation> out;
    Occupation doubled(static_cast<std::size_t>(p.dim()), 0);
    for (const Occupation& beta : enumerate_occupations(p.degree() / 2, p.dim())) {
        for (int j = 0; j < p.dim(); ++j) {
            doubled[static_cast<std::size_t>(j)] = 2 * beta[static_cast<std::size_t>(j)];
        }
        if (in_convex_hull(support, doubled)) out.push_back(beta);
    }
    return out;
}

}  // namespace dicke
