#include "dicke/polynomial.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace dicke;

namespace {

HomPoly motzkin_form() {
    // x^4 y^2 + x^2 y^4 + z^6 - 3 x^2 y^2 z^2, written by exponent vector.
    HomPoly p(3, 6);
    p.set_coeff({4, 2, 0}, 1.0);
    p.set_coeff({2, 4, 0}, 1.0);
    p.set_coeff({0, 0, 6}, 1.0);
    p.set_coeff({2, 2, 2}, -3.0);
    return p;
}

}  // namespace

TEST_SUITE_BEGIN("polynomial");

TEST_CASE("coefficient storage drops dust") {
    HomPoly p(2, 2);
    p.set_coeff({2, 0}, 1.0);
    p.add_coeff({2, 0}, -1.0 + 1e-16);
    CHECK(p.coeffs().empty());  // residue below the drop threshold vanishes
    CHECK(p.coeff({2, 0}) == 0.0);
    CHECK_THROWS_AS(p.set_coeff({1, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(HomPoly(0, 2), std::invalid_argument);
}

TEST_CASE("evaluate and partial derivatives") {
    HomPoly p(2, 3);
    p.set_coeff({2, 1}, 1.0);  // x^2 y
    CHECK(p.evaluate({2, 3}) == doctest::Approx(12.0));
    CHECK(p.partial({2, 3}, 0) == doctest::Approx(12.0));  // 2xy
    CHECK(p.partial({2, 3}, 1) == doctest::Approx(4.0));   // x^2
    CHECK_THROWS_AS(p.evaluate({1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(p.partial({1.0, 2.0}, 2), std::invalid_argument);

    // Euler's identity for homogeneous p: sum_i x_i dp/dx_i = deg * p.
    HomPoly m = motzkin_form();
    std::vector<double> x{0.7, -1.1, 0.4};
    double euler = 0.0;
    for (int var = 0; var < 3; ++var) euler += x[std::size_t(var)] * m.partial(x, var);
    CHECK(euler == doctest::Approx(6.0 * m.evaluate(x)).epsilon(1e-12));
}

TEST_CASE("poly_from_tensor matches the rank-one pairing") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (auto [n, d] : {std::pair{2, 2}, {3, 2}, {3, 3}}) {
        SymTensor T(n, d);
        for (const Occupation& alpha : enumerate_occupations(n, d)) T.set(alpha, unif(rng));
        HomPoly p = poly_from_tensor(T);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> x(std::size_t(d), 0.0);
            for (double& v : x) v = unif(rng);
            // p_T(x) = <T, x^(x)n> in the dense pairing.
            CHECK(p.evaluate(x) ==
                  doctest::Approx(euclid_inner(T, rank_one(x, n))).epsilon(1e-11));
        }
        SymTensor back = tensor_from_poly(p);
        for (const auto& [alpha, v] : T.values()) {
            CHECK(back.at(alpha) == doctest::Approx(v).epsilon(1e-13));
        }
    }
}

TEST_CASE("multiply convolves exponents") {
    HomPoly a(2, 1), b(2, 1);
    a.set_coeff({1, 0}, 1.0);
    a.set_coeff({0, 1}, 1.0);
    b.set_coeff({1, 0}, 1.0);
    b.set_coeff({0, 1}, -1.0);
    HomPoly prod = multiply(a, b);  // (x+y)(x-y) = x^2 - y^2
    CHECK(prod.coeff({2, 0}) == doctest::Approx(1.0));
    CHECK(prod.coeff({0, 2}) == doctest::Approx(-1.0));
    CHECK(prod.coeff({1, 1}) == 0.0);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    HomPoly m = motzkin_form();
    HomPoly s = power_of_linear_sum(3, 2);
    HomPoly ms = multiply(m, s);
    CHECK(ms.degree() == 8);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> x{unif(rng), unif(rng), unif(rng)};
        CHECK(ms.evaluate(x) ==
              doctest::Approx(m.evaluate(x) * s.evaluate(x)).epsilon(1e-11));
    }
}

TEST_CASE("power_of_linear_sum expands with multinomials") {
    HomPoly p = power_of_linear_sum(3, 2);
    CHECK(p.coeff({2, 0, 0}) == doctest::Approx(1.0));
    CHECK(p.coeff({1, 1, 0}) == doctest::Approx(2.0));
    CHECK(p.coeff({0, 1, 1}) == doctest::Approx(2.0));
    std::vector<double> x{0.2, 0.3, 0.5};
    CHECK(p.evaluate(x) == doctest::Approx(1.0));
    HomPoly p0 = power_of_linear_sum(2, 0);
    CHECK(p0.evaluate({5.0, 7.0}) == doctest::Approx(1.0));
}

TEST_CASE("norm_square_power hits only even exponents") {
    HomPoly p = norm_square_power(2, 3);
    for (const auto& [exponent, c] : p.coeffs()) {
        (void)c;
        for (int e : exponent) CHECK(e % 2 == 0);
    }
    std::vector<double> x{1.5, -0.5};
    double n2 = x[0] * x[0] + x[1] * x[1];
    CHECK(p.evaluate(x) == doctest::Approx(n2 * n2 * n2).epsilon(1e-12));
}

TEST_CASE("substitute_squares doubles every exponent") {
    HomPoly m = motzkin_form();
    HomPoly sq = substitute_squares(m);
    CHECK(sq.degree() == 12);
    CHECK(sq.coeff({4, 4, 4}) == doctest::Approx(-3.0));
    std::vector<double> x{0.9, 1.2, -0.8};
    std::vector<double> xx{x[0] * x[0], x[1] * x[1], x[2] * x[2]};
    CHECK(sq.evaluate(x) == doctest::Approx(m.evaluate(xx)).epsilon(1e-12));
}

TEST_CASE("in_convex_hull decides exactly") {
    std::vector<Occupation> seg{{0, 2}, {2, 0}};
    CHECK(in_convex_hull(seg, {1, 1}));
    CHECK(in_convex_hull(seg, {2, 0}));
    CHECK_FALSE(in_convex_hull(seg, {0, 0}));
    CHECK_FALSE(in_convex_hull(seg, {2, 2}));

    // 2D triangle in the degree-4 plane of d=3.
    std::vector<Occupation> tri{{4, 0, 0}, {0, 4, 0}, {0, 0, 4}};
    CHECK(in_convex_hull(tri, {2, 1, 1}));
    CHECK(in_convex_hull(tri, {1, 1, 2}));
    CHECK_FALSE(in_convex_hull(std::vector<Occupation>{{4, 0, 0}, {0, 4, 0}}, {1, 1, 2}));
    CHECK_THROWS_AS(in_convex_hull(tri, {2, 2}), std::invalid_argument);
}

TEST_CASE("half_newton_basis of the Motzkin support") {
    std::vector<Occupation> basis = half_newton_basis(motzkin_form());
    CHECK(basis == std::vector<Occupation>{{0, 0, 3}, {1, 1, 1}, {1, 2, 0}, {2, 1, 0}});
}

TEST_CASE("half_newton_basis of a full-support square") {
    HomPoly p = multiply(power_of_linear_sum(2, 1), power_of_linear_sum(2, 1));
    std::vector<Occupation> basis = half_newton_basis(p);
    CHECK(basis == std::vector<Occupation>{{0, 1}, {1, 0}});
    HomPoly odd(2, 3);
    odd.set_coeff({3, 0}, 1.0);
    CHECK_THROWS_AS(half_newton_basis(odd), std::invalid_argument);
}

TEST_SUITE_END();
