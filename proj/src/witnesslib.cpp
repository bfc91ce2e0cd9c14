#include "dicke/witnesslib.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "dicke/polynomial.hpp"
#include "dicke/soscone.hpp"

namespace dicke {

namespace {

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

SymTensor family_tensor(double a, double b, double c, int d) {
    HomPoly m1(d, 1), m2(d, 2), m3(d, 3);
    for (int i = 0; i < d; ++i) {
        Occupation e(static_cast<std::size_t>(d), 0);
        e[static_cast<std::size_t>(i)] = 1;
        m1.set_coeff(e, 1.0);
        e[static_cast<std::size_t>(i)] = 2;
        m2.set_coeff(e, 1.0);
        e[static_cast<std::size_t>(i)] = 3;
        m3.set_coeff(e, 1.0);
    }
    HomPoly p(d, 3);
    HomPoly m1m2 = multiply(m1, m2);
    HomPoly m1cube = multiply(multiply(m1, m1), m1);
    for (const auto& [g, v] : m3.coeffs()) p.add_coeff(g, a * v);
    for (const auto& [g, v] : m1m2.coeffs()) p.add_coeff(g, b * v);
    for (const auto& [g, v] : m1cube.coeffs()) p.add_coeff(g, c * v);
    return tensor_from_poly(p);
}

Occupation type_of(const Occupation& alpha) {
    Occupation t = alpha;
    std::sort(t.begin(), t.end(), std::greater<int>());
    return t;
}

}  // namespace

Witness motzkin() {
    HomPoly p(3, 3);
    p.set_coeff({2, 1, 0}, 1.0);
    p.set_coeff({1, 2, 0}, 1.0);
    p.set_coeff({0, 0, 3}, 1.0);
    p.set_coeff({1, 1, 1}, -3.0);
    Witness w(tensor_from_poly(p));
    w.provenance = "motzkin";
    w.copositive = true;
    w.sos = false;
    return w;
}

Witness robinson() {
    Witness w = choi_lam(3.0, -2.5, 0.5, 3);
    w.provenance = "robinson";
    // Cross-check the generated occupation values against the inequality
    // coefficients the form encodes.
    auto expect = [&](const Occupation& alpha, double value) {
        if (std::abs(w.tensor.at(alpha) - value) > 1e-12) {
            throw std::logic_error("robinson generator mismatch at " +
                                   format_occupation(alpha));
        }
    };
    expect({3, 0, 0}, 1.0);
    expect({0, 3, 0}, 1.0);
    expect({2, 1, 0}, -1.0 / 3.0);
    expect({0, 1, 2}, -1.0 / 3.0);
    expect({1, 1, 1}, 0.5);
    return w;
}

ChoiLamFlags choi_lam_flags(double a, double b, double c, int d) {
    ChoiLamFlags flags;
    flags.copositive = pstar_min_integers(a, b, c, d).value >= -1e-12;
    flags.sos = pstar_min_reals(a, b, c, d).value >= -1e-12;
    return flags;
}

Witness choi_lam(double a, double b, double c, int d) {
    if (d < 2) throw std::invalid_argument("choi_lam needs d >= 2");
    Witness w(family_tensor(a, b, c, d));
    ChoiLamFlags flags = choi_lam_flags(a, b, c, d);
    w.copositive = flags.copositive;
    w.sos = flags.sos;
    w.provenance = "choi_lam(" + format_real(a) + "," + format_real(b) + "," +
                   format_real(c) + ";d=" + std::to_string(d) + ")";
    return w;
}

double critical_mu(const Occupation& alpha) {
    int n = order_of(alpha);
    if (n == 0) throw std::invalid_argument("critical_mu needs a nonzero occupation");
    double peak = to_double(multinomial(n, alpha));
    for (int al : alpha) {
        if (al > 0) peak *= std::pow(static_cast<double>(al) / n, al);
    }
    return 1.0 / peak;
}

Witness projective_witness(const Occupation& alpha, double mu) {
    if (!std::isfinite(mu)) throw std::invalid_argument("projective witness needs finite mu");
    int n = order_of(alpha);
    int d = static_cast<int>(alpha.size());
    SymTensor W(n, d);
    for (const Occupation& beta : enumerate_occupations(n, d)) W.set(beta, 1.0);
    W.set(alpha, 1.0 - mu);
    Witness w(std::move(W));
    w.copositive = mu <= critical_mu(alpha) + 1e-12;
    w.provenance = "projective(" + format_occupation(alpha) + ",mu=" + format_real(mu) + ")";
    return w;
}

Witness lift_witness(const Witness& w, int var) {
    int d = w.tensor.dim();
    if (var < 0 || var >= d) throw std::out_of_range("lift variable outside [0, d)");
    HomPoly x(d, 1);
    Occupation e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(var)] = 1;
    x.set_coeff(e, 1.0);
    Witness out(tensor_from_poly(multiply(x, poly_from_tensor(w.tensor))));
    out.copositive = w.copositive;
    out.sos = w.sos;
    out.provenance = "lift(" + w.provenance + "," + std::to_string(var) + ")";
    return out;
}

DetectResult detect(const DsMatrix& X, const Witness& w, double eps) {
    if (!w.copositive) {
        throw std::invalid_argument("detect needs a witness flagged copositive");
    }
    if (X.order() != w.tensor.order() || X.dim() != w.tensor.dim()) {
        throw std::invalid_argument("state and witness shapes differ");
    }
    DetectResult res;
    res.pairing = euclid_inner(q_view(X), w.tensor);
    res.entangled = res.pairing < -eps;
    return res;
}

Qutrit3Result qutrit3_search() {
    // Objective in the two free coordinates: eta = 1 - 24q - 3r after
    // eliminating p through the trace normalization.
    auto p_of = [](double q, double r) { return (1.0 - 18.0 * q - 6.0 * r) / 3.0; };
    auto feasible = [&](double q, double r) {
        double p = p_of(q, r);
        return r >= 0.0 && q >= r && p >= q && p * (q + r) >= 2.0 * q * q;
    };
    auto eta_of = [](double q, double r) { return 1.0 - 24.0 * q - 3.0 * r; };

    const double qmax = 1.0 / 18.0, rmax = 1.0 / 6.0;
    const int grid = 200;
    double bq = 0.0, br = 0.0, beta = eta_of(0.0, 0.0);
    for (int i = 0; i < grid; ++i) {
        double q = qmax * i / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            double r = rmax * j / (grid - 1);
            if (!feasible(q, r)) continue;
            double e = eta_of(q, r);
            if (e < beta) {
                beta = e;
                bq = q;
                br = r;
            }
        }
    }

    double hq = qmax / (grid - 1), hr = rmax / (grid - 1);
    while (hq > 1e-10 || hr > 1e-10) {
        bool improved = false;
        const double moves[4][2] = {{hq, 0.0}, {-hq, 0.0}, {0.0, hr}, {0.0, -hr}};
        for (const auto& m : moves) {
            double q = bq + m[0], r = br + m[1];
            if (!feasible(q, r)) continue;
            double e = eta_of(q, r);
            if (e < beta) {
                beta = e;
                bq = q;
                br = r;
                improved = true;
            }
        }
        if (!improved) {
            hq *= 0.5;
            hr *= 0.5;
        }
    }

    Qutrit3Result res;
    res.q = bq;
    res.r = br;
    res.p = p_of(bq, br);
    res.eta = beta;
    SymTensor Q(3, 3);
    for (const Occupation& alpha : enumerate_occupations(3, 3)) {
        Occupation t = type_of(alpha);
        if (t == Occupation{3, 0, 0}) {
            Q.set(alpha, res.p);
        } else if (t == Occupation{2, 1, 0}) {
            Q.set(alpha, res.q);
        } else {
            Q.set(alpha, res.r);
        }
    }
    res.state = lambda_from_q(Q);
    return res;
}

}  // namespace dicke
