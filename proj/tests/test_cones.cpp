#include "dicke/cones.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dicke/dsmatrix.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dicke;

namespace {

DsMatrix random_state(int n, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-0.3, 1.0);
    DsMatrix X(n, d);
    for (const Occupation& alpha : enumerate_occupations(n, d)) {
        X.set_lambda(alpha, unif(rng));
    }
    return X;
}

// Dense PPT oracle: lambda_min over the partial transposes of 0..k legs.
double dense_ppt_min(const DsMatrix& X, int k) {
    num::DenseSym M = to_dense(X);
    double bottom = 1e300;
    for (int j = 0; j <= k; ++j) {
        std::vector<double> pt =
            oracle::partial_transpose(M.data(), X.order(), X.dim(), j);
        bottom = std::min(bottom, oracle::min_eigenvalue(pt, M.size()));
    }
    return bottom;
}

SymTensor planted_cp(int n, int d, int terms, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    SymTensor T(n, d);
    for (int q = 0; q < terms; ++q) {
        std::vector<double> v(static_cast<std::size_t>(d), 0.0);
        for (double& x : v) x = unif(rng);
        T.add_scaled(rank_one(v, n), 1.0);
    }
    return T;
}

}  // namespace

TEST_SUITE_BEGIN("cones");

TEST_CASE("is_nn verdicts and certificates") {
    CHECK(is_nn(rank_one({1.0, 2.0}, 2)).member());
    SymTensor T(2, 2);
    T.set({1, 1}, -0.1);
    ConeVerdict v = is_nn(T);
    CHECK(v.status == ConeVerdict::Status::non_member);
    CHECK(v.bad_alpha == Occupation{1, 1});
    CHECK(v.min_value == doctest::Approx(-0.1));
    for (const Occupation& alpha : enumerate_occupations(3, 3)) {
        CHECK(is_nn(q_view(pure_dicke(alpha))).member());
    }
}

TEST_CASE("is_mom level 0 is nonnegativity, bad levels throw") {
    SymTensor T(2, 2);
    T.set({1, 1}, 0.5);
    CHECK(is_mom(T, 0).member());
    CHECK_THROWS_AS(is_mom(T, 2), std::invalid_argument);
    CHECK_THROWS_AS(is_mom(T, -1), std::invalid_argument);
}

TEST_CASE("is_mom flags the Bell-like Dicke state") {
    // Q of |D_(1,1)>: off-diagonal 1/2, zero diagonal; moment matrix
    // [[0, 1/2], [1/2, 0]] is indefinite.
    ConeVerdict v = is_mom(q_view(pure_dicke({1, 1})), 1);
    CHECK(v.status == ConeVerdict::Status::non_member);
    CHECK(v.bad_j == 1);
    CHECK(v.min_value == doctest::Approx(-0.5));
    REQUIRE(v.eigvec.size() == 2);
}

TEST_CASE("is_mom accepts the uniform qutrit slice tensor") {
    SymTensor T(3, 3);
    for (const Occupation& alpha : enumerate_occupations(3, 3)) T.set(alpha, 1.0 / 27);
    CHECK(is_mom(T, 1).member());
}

TEST_CASE("is_mom n=2 equals entrywise plus matrix PSD") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        DsMatrix X = random_state(2, 3, 600 + s);
        SymTensor Q = q_view(X);
        ConeVerdict v = is_mom(Q, 1);
        bool nn = is_nn(Q, 1e-8).member();
        num::DenseSym G(3);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i; j < 3; ++j) {
                Occupation key(3, 0);
                key[i] += 1;
                key[j] += 1;
                G.set(i, j, Q.at(key));
            }
        }
        bool expect = nn && num::psd_check(G, 1e-8).psd;
        CHECK(v.member() == expect);
    }
}

TEST_CASE("is_mom agrees with the dense partial-transpose oracle") {
    for (auto [n, d] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
        for (std::uint64_t s = 0; s < 12; ++s) {
            DsMatrix X = random_state(n, d, 1000 + std::size_t(n * 100 + d * 10) + s);
            SymTensor Q = q_view(X);
            for (int k = 0; 2 * k <= n; ++k) {
                bool compact = is_mom(Q, k, 1e-7).member();
                bool dense = dense_ppt_min(X, k) >= -1e-7;
                CHECK(compact == dense);
            }
        }
    }
}

TEST_CASE("mom nesting: member at k+1 implies member at k") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        DsMatrix X = random_state(4, 2, 2000 + s);
        SymTensor Q = q_view(X);
        bool m1 = is_mom(Q, 1).member();
        bool m2 = is_mom(Q, 2).member();
        if (m2) CHECK(m1);
    }
}

TEST_CASE("cp_decompose recovers planted decompositions") {
    SymTensor T(3, 2);
    T.add_scaled(rank_one({1.0, 2.0}, 3), 1.0);
    T.add_scaled(rank_one({3.0, 1.0}, 3), 1.0);
    CpResult r = cp_decompose(T);
    REQUIRE(r.verdict.member());
    CHECK(r.residual < 1e-8);

    // Independent reconstruction from the certificate.
    SymTensor rebuilt(3, 2);
    for (const CpFactor& f : r.factors) {
        CHECK(f.weight >= 0.0);
        for (double x : f.vec) CHECK(x >= -1e-12);
        rebuilt.add_scaled(rank_one(f.vec, 3), f.weight);
    }
    rebuilt.add_scaled(T, -1.0);
    CHECK(weighted_norm(rebuilt) < 1e-6 * weighted_norm(T));
}

TEST_CASE("cp_decompose handles the all-ones tensor") {
    SymTensor T(2, 3);
    for (const Occupation& alpha : enumerate_occupations(2, 3)) T.set(alpha, 1.0);
    CpResult r = cp_decompose(T);
    CHECK(r.verdict.member());
    CHECK(r.residual < 1e-8);
}

TEST_CASE("cp_decompose never certifies the entangled Dicke state") {
    CpResult r = cp_decompose(q_view(pure_dicke({1, 1})));
    CHECK(r.verdict.status == ConeVerdict::Status::inconclusive);
    CHECK(is_mom(q_view(pure_dicke({1, 1})), 1).status ==
          ConeVerdict::Status::non_member);
    SymTensor neg(2, 2);
    neg.set({1, 1}, -1.0);
    CHECK(cp_decompose(neg).verdict.status == ConeVerdict::Status::non_member);
}

TEST_CASE("cp_decompose matches planted ensembles") {
    for (std::uint64_t s = 0; s < 6; ++s) {
        SymTensor T = planted_cp(3, 3, 3, 3000 + s);
        CpResult r = cp_decompose(T);
        CHECK(r.verdict.member());
        CHECK(is_mom(T, 1).member());
        CHECK(is_nn(T).member());
    }
}

TEST_CASE("qubit_separability equals full moment membership") {
    CHECK_THROWS_AS(qubit_separability(SymTensor(2, 3)), std::invalid_argument);
    for (int n = 3; n <= 6; ++n) {
        for (std::uint64_t s = 0; s < 25; ++s) {
            DsMatrix X = random_state(n, 2, 4000 + std::size_t(n) * 100 + s);
            SymTensor Q = q_view(X);
            CHECK(qubit_separability(Q).member() == is_mom(Q, n / 2).member());
        }
    }
    CHECK(qubit_separability(q_view(pure_dicke({2, 2}))).status ==
          ConeVerdict::Status::non_member);
    CHECK(qubit_separability(rank_one({0.5, 0.5}, 4)).member());
}

TEST_CASE("copositive_min on hand examples") {
    SymTensor T(2, 2);
    T.set({1, 1}, -1.0);
    SimplexMin m = copositive_min(T);
    CHECK(m.value == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(m.argmin[0] == doctest::Approx(0.5).epsilon(1e-6));

    // A strictly positive diagonal tensor bottoms out at the smallest vertex.
    SymTensor D(2, 2);
    D.set({2, 0}, 2.0);
    D.set({0, 2}, 1.0);
    SimplexMin md = copositive_min(D);
    CHECK(md.value == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("copositive_min stays on the simplex") {
    SymTensor T = planted_cp(3, 4, 2, 99);
    SimplexMin m = copositive_min(T, 4);
    double total = 0.0;
    for (double x : m.argmin) {
        CHECK(x >= -1e-15);
        total += x;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_SUITE_END();
