// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <stdexcept>
#include <vector>

#include "core/melnikov.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace avl;
using namespace avl::melnikov;

namespace {

TangentialSets sets36() { return {3, {3}, {6}}; }

DiophantineParams dio_default(double gamma = 1e-3) {
    DiophantineParams d;
    d.gamma = gamma;
    d.q0 = 2;
    d.upsilon = 0.9;
    d.d = 2;
    d.tau1 = 7.0;
    d.tau2 = 12.0;
    d.n_cut = 20;
    return d;
}

// Loose exponents for the constructed-resonance checks so the thresholds
// stay far above the bisection residual.
DiophantineParams dio_res() {
    DiophantineParams d = dio_default(1e-2);
    d.tau1 = 3.0;
    d.tau2 = 4.0;
    return d;
}

// 1-D root scan oracle: finds b in (lo,hi) where f changes sign, bisected.
template <typename F>
bool find_resonance(const F& f, double lo, double hi, double& out) {
    const int n = 4000;
    double prev = f(lo);
    for (int i = 1; i <= n; ++i) {
        const double b = lo + (hi - lo) * i / n;
        const double cur = f(b);
        if (prev * cur < 0.0) {
            double a = lo + (hi - lo) * (i - 1) / n, c = b;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + c);
                (f(a) * f(mid) <= 0.0 ? c : a) = mid;
            }
            out = 0.5 * (a + c);
            return true;
        }
        prev = cur;
    }
    return false;
}

} // namespace

TEST_SUITE_BEGIN("melnikov");

TEST_CASE("transport checker: closed-form bound and resonance") {
    const TangentialSets s = sets36();
    DiophantineParams dio = dio_default();
    FrequencyContext ctx(s, 0.3, 1.0, 80);

    // l = 0, j = m: LHS = m v_k >= m Omega; passes since v_k >= Omega > 4 gamma^upsilon
    CHECK(ctx.ck(2) > 4.0 * std::pow(dio.gamma, dio.upsilon));
    CHECK(check_transport(ctx, dio, {0, 0}, 3, 1));
    CHECK(check_transport(ctx, dio, {0, 0}, 3, 2));
    CHECK_THROWS_AS(check_transport(ctx, dio, {0, 0}, 0, 1), std::invalid_argument);

    // gamma -> 0+: true away from exact resonance
    DiophantineParams tiny = dio_default(1e-15);
    CHECK(check_transport(ctx, tiny, {1, -1}, 3, 1));

    // constructed resonance: scan b for a zero of omega.l + j c_k
    auto g = [&](double b) {
        FrequencyContext c(sets36(), b, 1.0, 80);
        return c.omega_dot({-4, 1}) + (-9.0) * c.ck(2);
    };
    double bres = 0.0;
    REQUIRE(find_resonance(g, 0.05, 0.45, bres));
    FrequencyContext cres(sets36(), bres, 1.0, 80);
    CHECK_FALSE(check_transport(cres, dio_res(), {-4, 1}, -9, 2));
}

TEST_CASE("first Melnikov checker") {
    const TangentialSets s = sets36();
    DiophantineParams dio = dio_default();
    FrequencyContext ctx(s, 0.3, 1.0, 80);

    // large |j| at fixed l: |mu_{j,k}| >= Omega |j| dominates omega.l
    for (int j : {30, 45, 60}) CHECK(check_first(ctx, dio, {1, 1}, j, 1));
    // index constraints: tangential and zero modes rejected
    CHECK_THROWS_AS(check_first(ctx, dio, {0, 0}, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(check_first(ctx, dio, {0, 0}, 6, 2), std::invalid_argument);
    CHECK(check_first(ctx, dio_default(1e-15), {2, -1}, 9, 1));

    auto g = [&](double b) {
        FrequencyContext c(sets36(), b, 1.0, 80);
        return c.omega_dot({-3, 3}) + c.mu(6, 1);
    };
    double bres = 0.0;
    REQUIRE(find_resonance(g, 0.05, 0.45, bres));
    FrequencyContext cres(sets36(), bres, 1.0, 80);
    CHECK_FALSE(check_first(cres, dio_res(), {-3, 3}, 6, 1));
}

TEST_CASE("second Melnikov, same component") {
    const TangentialSets s = sets36();
    DiophantineParams dio = dio_default();
    FrequencyContext ctx(s, 0.3, 1.0, 80);

    // j = j0 with l != 0 reduces to |omega.l| > 2 gamma / <l>^tau2
    const double lhs = std::abs(ctx.omega_dot({1, 0}));
    const double rhs = 2.0 * dio.gamma / std::pow(1.0, dio.tau2);
    CHECK(check_second_same(ctx, dio, {1, 0}, 9, 9, 1) == (lhs > rhs));
    CHECK_THROWS_AS(check_second_same(ctx, dio, {0, 0}, 9, 9, 1), std::invalid_argument);

    // widely separated modes pass by the separation margin
    CHECK(check_second_same(ctx, dio, {1, 1}, 60, 9, 1));
    CHECK(check_second_same(ctx, dio, {1, 1}, 60, -60, 2));

    auto g = [&](double b) {
        FrequencyContext c(sets36(), b, 1.0, 80);
        return c.omega_dot({-3, 3}) + c.mu(12, 1) - c.mu(6, 1);
    };
    double bres = 0.0;
    REQUIRE(find_resonance(g, 0.05, 0.45, bres));
    FrequencyContext cres(sets36(), bres, 1.0, 80);
    CHECK_FALSE(check_second_same(cres, dio_res(), {-3, 3}, 12, 6, 1));
}

TEST_CASE("second Melnikov, cross components with the isotropic weight") {
    const TangentialSets s = sets36();
    DiophantineParams dio = dio_default();
    FrequencyContext ctx(s, 0.3, 1.0, 80);

    // l = 0, j = j0: the gap is sqrt(-Delta_j) > 0
    CHECK(check_second_cross(ctx, dio, {0, 0}, 9, 9));
    // large isotropic weight: threshold collapses
    CHECK(check_second_cross(ctx, dio, {0, 0}, 60, 9));
    CHECK_THROWS_AS(check_second_cross(ctx, dio, {0, 0}, 3, 9), std::invalid_argument);

    auto g = [&](double b) {
        FrequencyContext c(sets36(), b, 1.0, 80);
        return c.omega_dot({-3, 2}) + c.mu(12, 1) - c.mu(15, 2);
    };
    double bres = 0.0;
    REQUIRE(find_resonance(g, 0.05, 0.45, bres));
    FrequencyContext cres(sets36(), bres, 1.0, 80);
    CHECK_FALSE(check_second_cross(cres, dio_res(), {-3, 2}, 12, 15));
}

TEST_CASE("checkers are monotone in gamma and sign-symmetric") {
    const TangentialSets s = sets36();
    testutil::Rng rng(101);
    int done = 0;
    while (done < 2000) {
        const double b = rng.uniform(0.05, 0.45);
        FrequencyContext ctx(s, b, 1.0, 40);
        std::vector<int> l = {rng.uniform_int(-6, 6), rng.uniform_int(-6, 6)};
        std::vector<int> ln = {-l[0], -l[1]};
        const int j = 3 * rng.uniform_int(-12, 12);
        const int j0 = 3 * rng.uniform_int(-12, 12);
        const int k = rng.uniform_int(1, 2);
        const double g_small = std::pow(10.0, rng.uniform(-6.0, -1.0));
        DiophantineParams lo = dio_default(g_small);
        DiophantineParams hi = dio_default(std::min(1.0, g_small * 50.0));
        const int which = rng.uniform_int(0, 3);
        try {
            bool a_lo = false, a_hi = false, a_neg = false;
            switch (which) {
                case 0:
                    a_lo = check_transport(ctx, lo, l, j, k);
                    a_hi = check_transport(ctx, hi, l, j, k);
                    a_neg = check_transport(ctx, lo, ln, -j, k);
                    break;
                case 1:
                    a_lo = check_first(ctx, lo, l, j, k);
                    a_hi = check_first(ctx, hi, l, j, k);
                    a_neg = check_first(ctx, lo, ln, -j, k);
                    break;
                case 2:
                    a_lo = check_second_same(ctx, lo, l, j, j0, k);
                    a_hi = check_second_same(ctx, hi, l, j, j0, k);
                    a_neg = check_second_same(ctx, lo, ln, -j, -j0, k);
                    break;
                default:
                    a_lo = check_second_cross(ctx, lo, l, j, j0);
                    a_hi = check_second_cross(ctx, hi, l, j, j0);
                    a_neg = check_second_cross(ctx, lo, ln, -j, -j0);
                    break;
            }
            if (!a_lo) CHECK_FALSE(a_hi);  // failing at gamma fails at larger gamma
            if (a_hi) CHECK(a_lo);
            CHECK(a_neg == a_lo);
            ++done;
        } catch (const std::invalid_argument&) {
            // index constraint violated; resample
        }
    }
}

TEST_CASE("excluded measure: monotone over gamma decades, labelled failures") {
    TangentialSets s = sets36();
    double prev = 1.0 + 1e-12;
    double first_frac = -1.0, last_frac = -1.0;
    for (double gamma : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        DiophantineParams dio = dio_default(gamma);
        MeasureResult res = excluded_measure(dio, s, 1.0, 0.1, 0.4, 41, 40);
        CHECK(res.fraction <= prev);
        prev = res.fraction;
        if (first_frac < 0.0) first_frac = res.fraction;
        last_frac = res.fraction;
        int labelled = 0;
        for (const auto& row : res.rows) {
            if (row.excluded) {
                CHECK_FALSE(row.first_fail_kind.empty());
                ++labelled;
            }
        }
        int counted = 0;
        for (const auto& [kind, n] : res.breakdown) {
            (void)kind;
            counted += n;
        }
        CHECK(counted == labelled);
    }
    // genuine decay across the ladder (the Omega = 1 transport degeneracy
    // keeps a slowly-shrinking interval excluded; see the acceptance report)
    CHECK(last_frac < first_frac);
}

TEST_CASE("Omega = 1 transport degeneracy: the flat combination in closed form") {
    // With S2 = {6} and Omega = 1 the tangential frequency is arithmetically
    // resonant with the branch-2 transport speed: for l = (0,6), j = -39,
    //   -omega_Eq . l - 39 c_2 = 3 b^12 / ((2-3b^2) + sqrt((2-3b^2)^2 - b^12)),
    // which is exponentially flat in b.  This is what pins the excluded
    // interval at small b in the measure sweeps.
    const TangentialSets s = sets36();
    for (double b : {0.1, 0.2, 0.3, 0.4}) {
        FrequencyContext ctx(s, b, 1.0, 60);
        const double comb = ctx.omega_dot({0, -6}) + (-39.0) * ctx.ck(2);
        const double t = 2.0 - 3.0 * b * b;
        const double closed = 3.0 * std::pow(b, 12) / (t + std::sqrt(t * t - std::pow(b, 12)));
        CHECK(std::abs(comb - closed) < 1e-12);
        // below the crossover modulus the checker fails at desk-scale gamma
        DiophantineParams dio = dio_default(1e-3);
        if (b <= 0.2) CHECK_FALSE(check_transport(ctx, dio, {0, -6}, -39, 2));
    }
}

TEST_CASE("excluded measure: gamma -> 0 empties a grid away from the degeneracy") {
    // On [0.32, 0.4] the flat transport combination 6|r_6(b)| is large enough
    // that every condition separates as gamma shrinks.
    TangentialSets s = sets36();
    DiophantineParams dio = dio_default(1e-8);
    MeasureResult res = excluded_measure(dio, s, 1.0, 0.32, 0.4, 21, 40);
    CHECK(res.fraction == 0.0);
}

TEST_SUITE_END();
