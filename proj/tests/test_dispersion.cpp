// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include "core/dispersion.hpp"
#include "core/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace avl;
using namespace avl::dispersion;

namespace {

// Quadratic-formula oracle for the block eigenfrequencies, written from the
// trace/determinant of the 2x2 system rather than the closed form under test.
double omega_oracle(int j, int k, double b, double om) {
    const int a = std::abs(j);
    const double mu = a * (om + 0.5 * (1 - b * b)) - 0.5;
    const double de = a * om + 0.5;
    const double disc = (mu - de) * (mu - de) - std::pow(b, 2 * a);  // -Delta_j
    const double val = 0.5 * (mu + de) + (k == 1 ? 0.5 : -0.5) * std::sqrt(disc);
    return j > 0 ? val : -val;
}

// Bisection oracle independent of the library bracketing choices.
double root_oracle(int n) {
    double lo = 1e-9, hi = 1 - 1e-9;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::pow(mid, n) + 1 - 0.5 * n * (1 - mid * mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_SUITE_BEGIN("dispersion");

TEST_CASE("threshold polynomial golden values") {
    CHECK(f_poly(3, 0.5) == 0.0);
    // factorization (b+1)^2 (b-1/2) for m=3, checked pointwise
    for (double b : {0.1, 0.3, 0.47, 0.62, 0.9})
        CHECK(f_poly(3, b) == doctest::Approx((b + 1) * (b + 1) * (b - 0.5)).epsilon(1e-14));
    const double b4 = std::sqrt(std::sqrt(2.0) - 1.0);
    CHECK(std::abs(f_poly(4, b4)) < 1e-14);
}

TEST_CASE("discriminant values and parity") {
    for (int i = 0; i <= 99; ++i) {
        const double b = 0.005 + i * 0.99 / 99;
        CHECK(std::abs(delta(2, b)) < 1e-14);  // identically zero
    }
    CHECK(delta(1, 0.5) == doctest::Approx(-0.140625).epsilon(1e-15));
    CHECK(delta(3, 0.5) == doctest::Approx(0.0));
    for (int j : {1, 4, 9})
        for (double b : {0.2, 0.6}) CHECK(delta(j, b) == delta(-j, b));
}

TEST_CASE("threshold roots: golden values and growth") {
    CHECK(std::abs(root_b_n(3) - 0.5) < 1e-12);
    CHECK(std::abs(root_b_n(4) - std::sqrt(std::sqrt(2.0) - 1.0)) < 1e-12);
    CHECK(std::abs(root_b_n(5) - root_oracle(5)) < 1e-12);
    CHECK(root_b_n(5) > root_b_n(4));
    double prev = 0.0;
    for (int n = 3; n <= 50; ++n) {
        const double bn = root_b_n(n);
        CHECK(bn > prev);
        prev = bn;
    }
    CHECK(prev > 0.9);
}

TEST_CASE("m_star selection and degenerate input") {
    CHECK(m_star(0.4) == 3);
    CHECK(m_star(0.45) == 3);
    CHECK(m_star(0.6) == 4);
    CHECK_THROWS_AS(m_star(0.5), RegimeError);
    CHECK_THROWS_AS(m_star(root_b_n(4)), RegimeError);
}

TEST_CASE("frequencies at b = 0 and elliptic values") {
    CHECK(omega_jk(3, 1, 0.0, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(omega_jk(3, 2, 0.0, 1.0) == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(omega_jk(4, 1, 0.5, 1.0) == doctest::Approx(4.9980391854123045).epsilon(1e-14));
    CHECK(omega_jk(4, 2, 0.5, 1.0) == doctest::Approx(4.5019608145876955).epsilon(1e-14));
    // oddness in j, against the quadratic oracle
    testutil::Rng rng(21);
    for (int t = 0; t < 50; ++t) {
        const int j = rng.uniform_int(4, 40);
        const double b = rng.uniform(0.0, 0.55);
        const double om = rng.uniform(0.5, 2.0);
        for (int k : {1, 2}) {
            CHECK(omega_jk(j, k, b, om) == doctest::Approx(omega_oracle(j, k, b, om)).epsilon(1e-13));
            CHECK(omega_jk(-j, k, b, om) == doctest::Approx(-omega_jk(j, k, b, om)).epsilon(1e-15));
        }
    }
    CHECK_THROWS_AS(omega_jk(2, 1, 0.5, 1.0), RegimeError);  // Delta_2 = 0
    CHECK_THROWS_AS(omega_jk(3, 1, 0.7, 1.0), RegimeError);  // above b_3
}

TEST_CASE("eigenvector coefficient a_j") {
    for (int j : {3, 5, 12}) CHECK(a_j(j, 0.0) == 0.0);
    CHECK_THROWS_AS(a_j(2, 0.3), RegimeError);
    CHECK(a_j(4, 0.5) ==
          doctest::Approx(std::pow(0.5, 4) / (0.5 + std::sqrt(0.25 - std::pow(0.5, 8))))
              .epsilon(1e-15));
    CHECK(a_j(4, 0.5) == doctest::Approx(0.06274606680622823).epsilon(1e-14));
    for (int j : {3, 4, 7})
        for (double b : {0.1, 0.4}) {
            CHECK(a_j(-j, b) == a_j(j, b));
            CHECK(a_j(j, b) >= 0.0);
            CHECK(a_j(j, b) < 1.0);
        }
}

TEST_CASE("asymptotic correction r_j") {
    for (int j : {3, 6, 20}) CHECK(asymptotic_r_j(j, 0.0) == 0.0);
    // reconstruction identity against the frequencies
    testutil::Rng rng(31);
    for (int t = 0; t < 60; ++t) {
        const int j = rng.uniform_int(4, 64);
        const double b = rng.uniform(0.0, 0.55);
        const double om = rng.uniform(0.5, 2.0);
        const double rj = asymptotic_r_j(j, b);
        for (int k : {1, 2}) {
            const double vk = om + (2 - k) * 0.5 * (1 - b * b);
            const double rec = j * vk + (k == 1 ? -0.5 : 0.5) + (k == 1 ? rj : -rj);
            CHECK(std::abs(rec - omega_jk(j, k, b, om)) < 1e-13);
        }
    }
    // decay: |j|^3 r_j stays bounded over j in [4, 64]
    double cap = 0.0;
    for (int j = 4; j <= 64; ++j) cap = std::max(cap, std::abs(asymptotic_r_j(j, 0.5)) * j * j * j);
    CHECK(cap < 2.0);  // frozen from an evaluation sweep (max ~ 0.5 at j=4)
}

TEST_CASE("bifurcation pair omega_pm") {
    auto [lo3, hi3] = omega_pm(3, 0.5);  // double root at b_3
    CHECK(lo3 == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(hi3 == doctest::Approx(0.1875).epsilon(1e-15));
    auto [lo4, hi4] = omega_pm(4, 0.5);
    const double half = std::sqrt(0.25 - std::pow(0.5, 8)) / 8.0;
    CHECK(lo4 == doctest::Approx(0.1875 - half).epsilon(1e-15));
    CHECK(hi4 == doctest::Approx(0.1875 + half).epsilon(1e-15));
    CHECK_THROWS_AS(omega_pm(3, 0.7), RegimeError);  // f_poly > 0
}

TEST_CASE("monotonicity threshold omega_star") {
    CHECK(omega_star(4, 0.6) > 0.0);
    double prev = 1e9;
    for (int m : {4, 8, 16, 32}) {
        const double w = omega_star(m, 0.6);
        CHECK(w > 0.0);
        CHECK(w < prev);
        prev = w;
    }
    CHECK(prev < 1e-6);
    // closed-form inner minimizer against a grid search
    for (int m : {4, 9}) {
        const double bstar = 0.6;
        const double bm = std::min(bstar, std::exp(-1.0 / m));
        double grid_best = 0.0;
        for (int i = 1; i <= 20000; ++i) {
            const double b = bstar * i / 20000.0;
            grid_best = std::min(grid_best, std::pow(b, m) * std::log(b));
        }
        CHECK(std::pow(bm, m) * std::log(bm) == doctest::Approx(grid_best).epsilon(1e-6));
    }
}

TEST_CASE("equilibrium frequency vector") {
    TangentialSets s1{3, {3}, {}};
    auto v = equilibrium_vector(s1, 0.0, 1.0);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == doctest::Approx(4.0).epsilon(1e-15));

    TangentialSets s2{4, {4}, {8}};
    auto w = equilibrium_vector(s2, 0.5, 1.0);
    REQUIRE(w.size() == 2);
    CHECK(w[0] == doctest::Approx(omega_oracle(4, 1, 0.5, 1.0)).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(omega_oracle(8, 2, 0.5, 1.0)).epsilon(1e-14));

    TangentialSets empty{3, {}, {}};
    CHECK(equilibrium_vector(empty, 0.3, 1.0).empty());
}

TEST_CASE("separation margins") {
    CHECK(separation_margin(4, 8, 2, 0.0, 0.4, 1.0) > 0.0);
    // opposite signs: margin at least Omega by oddness and positivity
    CHECK(separation_margin(4, -4, 1, 0.0, 0.4, 1.0) >= 1.0);
    CHECK_THROWS_AS(separation_margin(4, 4, 1, 0.0, 0.4, 1.0), std::invalid_argument);
}

TEST_CASE("transversality margins: anchored values") {
    TangentialSets sets{3, {3}, {}};
    // kind=freq with l=(1): plain frequency curve; at b=0 the value is 4
    const double mfreq = russmann_margin({1}, 0, 0, RussmannKind::Freq, sets, 0.0, 0.0, 1.0, 0);
    CHECK(mfreq == doctest::Approx(4.0).epsilon(1e-12));
    // kind=transport with l=0: |j v_k| >= Omega |j|, normalized by <0> = 1
    const double mtr = russmann_margin({0}, 3, 0, RussmannKind::Transport, sets, 0.1, 0.4, 1.0, 0);
    CHECK(mtr >= 3.0);
    CHECK_THROWS_AS(russmann_margin({0}, 0, 0, RussmannKind::Freq, sets, 0.1, 0.4, 1.0, 1),
                    std::invalid_argument);
}

TEST_CASE("transversality margins: randomized admissible sweep") {
    TangentialSets sets{3, {3}, {6}};
    testutil::Rng rng(77);
    int tried = 0;
    while (tried < 40) {
        std::vector<int> l = {rng.uniform_int(-5, 5), rng.uniform_int(-5, 5)};
        const int kind_pick = rng.uniform_int(0, 4);
        const int j = 3 * rng.uniform_int(-6, 6);
        const int j0 = 3 * rng.uniform_int(-6, 6);
        const auto kind = static_cast<RussmannKind>(kind_pick);
        try {
            const double m = russmann_margin(l, j, j0, kind, sets, 0.1, 0.4, 1.0, 2);
            CHECK(m > 0.0);
            ++tried;
        } catch (const std::invalid_argument&) {
            // index constraints violated; resample
        }
    }
}

TEST_CASE("monotonicity suite over the mode ladder") {
    const double om = 1.0;
    for (double b : {0.0, 0.2, 0.4, 0.59}) {
        double prev_ratio1 = 0.0, prev_ratio2 = 1e18, prev_disc = 0.0;
        for (int j = 4; j <= 200; ++j) {
            const double d = -delta(j, b) / (double(j) * j);
            CHECK(d > 0.0);
            if (j > 4) CHECK(d > prev_disc);
            prev_disc = d;
            const double r1 = omega_jk(j, 1, b, om) / j;
            const double r2 = omega_jk(j, 2, b, om) / j;
            if (j > 4) {
                CHECK(r1 > prev_ratio1);
                CHECK(r2 < prev_ratio2);
            }
            prev_ratio1 = r1;
            prev_ratio2 = r2;
            CHECK(std::abs(omega_jk(j, 1, b, om)) >= om * j);
            CHECK(std::abs(omega_jk(j, 2, b, om)) >= om * j);
        }
    }
}

TEST_CASE("linear growth limit with a frozen constant") {
    // | Omega_{j,k}/j - (Omega + (2-k)(1-b^2)/2) | <= C / j with C = 0.75,
    // frozen from a sweep over j in [4,200], b in [0,0.59], Omega in {0.5,1,2}
    for (double om : {0.5, 1.0, 2.0})
        for (double b : {0.0, 0.3, 0.59})
            for (int j = 4; j <= 200; j += 7)
                for (int k : {1, 2}) {
                    const double vk = om + (2 - k) * 0.5 * (1 - b * b);
                    CHECK(std::abs(omega_jk(j, k, b, om) / j - vk) <= 0.75 / j);
                }
}

TEST_CASE("large-velocity branch-2 monotonicity") {
    const double om = 2.0 * omega_star(4, 0.6);
    for (double b : {0.0, 0.3, 0.599}) {
        double prev = 0.0;
        for (int j = 4; j <= 200; ++j) {
            const double w = omega_jk(j, 2, b, om);
            if (j > 4) CHECK(w > prev);
            prev = w;
        }
    }
}

TEST_SUITE_END();
