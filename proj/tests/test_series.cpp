#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "syncap/series.hpp"

using namespace syncap;

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(1.0 / 3.0) == doctest::Approx(0.9182958340544896).epsilon(1e-14));
    CHECK(binary_entropy(0.2) == doctest::Approx(binary_entropy(0.8)).epsilon(1e-15));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
}

TEST_CASE("golden constants at deep truncation") {
    CHECK(std::abs(g1(1000).value - 0.4901) <= 5e-4);
    CHECK(std::abs(a1(1000).value - 1.2885) <= 5e-4);
    CHECK(std::abs(e_log_l0(1000).value - 1.2886) <= 0.01 * 1.2886);
    // tighter pins on the same values so regressions show up immediately
    CHECK(g1(1000).value == doctest::Approx(0.49010187277835).epsilon(1e-11));
    CHECK(a1(1000).value == doctest::Approx(1.28853127577939).epsilon(1e-11));
    CHECK(e_log_l0(1000).value == doctest::Approx(1.28853127577939).epsilon(1e-11));
    // tails are negligible at L = 1000
    CHECK(g1(1000).tail_bound < 1e-290);
}

TEST_CASE("g1 recombines its two ingredient series exactly") {
    for (std::size_t L : {1u, 10u, 100u, 1000u}) {
        const double expect = -std::numbers::log2e + 0.5 * e_log_l0(L).value + a1(L).value;
        CHECK(g1(L).value == expect); // same arithmetic path, bitwise equal
    }
}

TEST_CASE("small-L hand values") {
    CHECK(e_log_l0(1).value == 0.0); // 1*log2(1) = 0
    CHECK(e_log_l0(2).value == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(a1(1).value == doctest::Approx(0.25).epsilon(1e-15)); // (1/2)*2*(1/4)*h(1/2)
    CHECK(g1(1).value == doctest::Approx(-1.1926950408889634).epsilon(1e-14));
    CHECK(g1(1).tail_bound == 4.125);      // 2^-3 * 33
    CHECK(g1(10).tail_bound == doctest::Approx(0.0498046875).epsilon(1e-15)); // 204/4096
    CHECK(a1(1).tail_bound == 1.75);       // 2^-2 * 7
    CHECK(e_log_l0(1).tail_bound == 2.75); // 2^-2 * 11
}

TEST_CASE("tail bounds dominate the discarded mass") {
    for (std::size_t L : {5u, 10u, 20u, 40u}) {
        // refining far past L moves the value by at most the claimed tail
        CHECK(std::abs(g1(4 * L).value - g1(L).value) <= g1(L).tail_bound);
        CHECK(std::abs(a1(4 * L).value - a1(L).value) <= a1(L).tail_bound);
        CHECK(std::abs(e_log_l0(4 * L).value - e_log_l0(L).value) <= e_log_l0(L).tail_bound);
        // doubling L shrinks every tail and moves the value by less than the tail
        CHECK(g1(2 * L).tail_bound < g1(L).tail_bound);
        CHECK(a1(2 * L).tail_bound < a1(L).tail_bound);
        CHECK(e_log_l0(2 * L).tail_bound < e_log_l0(L).tail_bound);
        CHECK(std::abs(g1(2 * L).value - g1(L).value) <= g1(L).tail_bound);
        CHECK(std::abs(a1(2 * L).value - a1(L).value) <= a1(L).tail_bound);
        CHECK(std::abs(e_log_l0(2 * L).value - e_log_l0(L).value) <= e_log_l0(L).tail_bound);
    }
    for (std::size_t L = 1; L < 80; ++L) {
        CHECK(g1(L + 1).tail_bound <= g1(L).tail_bound);
        CHECK(a1(L + 1).tail_bound <= a1(L).tail_bound);
        CHECK(e_log_l0(L + 1).tail_bound <= e_log_l0(L).tail_bound);
    }
}

TEST_CASE("a1 agrees with its separable collapsed form") {
    // sum over a is geometric, so A1 = (1/2) sum_b (b+1) 2^-b h(1/(b+1))
    const std::size_t L = 60;
    double collapsed = 0.0;
    for (std::size_t b = L; b >= 1; --b)
        collapsed += std::ldexp(double(b + 1) * binary_entropy(1.0 / double(b + 1)), -int(b));
    collapsed *= 0.5;
    CHECK(a1(L).value == doctest::Approx(collapsed).epsilon(1e-12));
}

TEST_CASE("boundary constant coincides with the length-biased log mean") {
    // Abel summation telescopes the A1 double series onto E[log2 L0]; the two
    // limits are one constant seen from two definitions
    CHECK(a1(1000).value == doctest::Approx(e_log_l0(1000).value).epsilon(1e-12));
}

TEST_CASE("capacity expansion values and shape") {
    CHECK(capacity_expansion(0.0).value == 1.0);
    CHECK(capacity_expansion(0.0).remainder_order == "O(alpha^(3/2-eps))");
    CHECK(std::abs(capacity_expansion(0.01).value - 0.938463) <= 1e-6);
    CHECK(capacity_expansion(0.01).value == doctest::Approx(0.93846245683).epsilon(1e-10));

    double prev = 1.0;
    for (double a = 0.002; a <= 0.0501; a += 0.002) {
        const double v = capacity_expansion(a).value;
        CHECK(v < prev); // strictly decreasing over the small-alpha window
        CHECK(v <= 1.0); // insertions cannot raise the per-symbol rate above one bit
        prev = v;
    }
    CHECK_THROWS_AS(capacity_expansion(1.0), std::invalid_argument);
}

TEST_CASE("conditional entropy asymptote") {
    CHECK(hyx_asymptote(0.0) == 0.0);
    CHECK(hyx_asymptote(0.01) == doctest::Approx(0.07146516676).epsilon(1e-9));
    for (double a : {0.001, 0.01, 0.1})
        CHECK(hyx_asymptote(a) < binary_entropy(a) + a); // coincidences only remove entropy
}

TEST_CASE("expansion recombines with the conditional-entropy asymptote") {
    // At matched truncation the series terms cancel algebraically, leaving only
    // the part of h(alpha) beyond its first-order expansion -alpha log2(alpha/e):
    //   expansion - (1 + alpha - hyx) = alpha log2(alpha) - alpha log2(e) + h(alpha)
    const std::size_t L = 800;
    for (double a : {1e-3, 1e-2}) {
        const double lhs = capacity_expansion(a, L).value - (1.0 + a - hyx_asymptote(a, L));
        const double rhs = a * std::log2(a) - a * std::log2(std::exp(1.0)) + binary_entropy(a);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("pair-correction bound") {
    CHECK(epsilon2_bound(0.0) == 0.0);
    CHECK(epsilon2_bound(0.02, 200) == doctest::Approx(4.0 * epsilon2_bound(0.01, 200)).epsilon(1e-14));
    CHECK(epsilon2_bound(0.01, 200) == doctest::Approx(0.000560864669685).epsilon(1e-9));
    // deepening the truncation can only lower the bound (tail is over-counted)
    CHECK(epsilon2_bound(0.01, 400) <= epsilon2_bound(0.01, 200));
}

TEST_CASE("converse-side budgets") {
    CHECK(hzv_converse_bound(0.01, 0.1, 10) == doctest::Approx(1.981116490576e-4).epsilon(1e-10));
    CHECK(hzv_converse_bound(0.01, 0.1, 20) > hzv_converse_bound(0.01, 0.1, 10));
    CHECK(hzv_converse_bound(1e-8, 0.1, 10) < 1e-14); // vanishes faster than alpha
    CHECK_THROWS_AS(hzv_converse_bound(0.0, 0.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(hzv_converse_bound(0.01, 0.0, 10), std::invalid_argument);

    CHECK(run_tail_prob(4) == 0.1875);
    CHECK(flip_density_bound(4) == 0.046875);
    CHECK(flip_density_bound(8) == 0.00244140625);
    // successive tails drop by exactly P(L0 = L) = L 2^-(L+1)
    for (std::size_t L = 2; L <= 30; ++L)
        CHECK(run_tail_prob(L - 1) - run_tail_prob(L) ==
              doctest::Approx(std::ldexp(double(L), -int(L) - 1)).epsilon(1e-14));
}

TEST_CASE("truncation level domain") {
    CHECK_THROWS_AS(e_log_l0(0), std::invalid_argument);
    CHECK_THROWS_AS(a1(0), std::invalid_argument);
    CHECK_THROWS_AS(g1(0), std::invalid_argument);
    CHECK_THROWS_AS(g1(1061), std::invalid_argument);
    CHECK_NOTHROW(g1(1060));
}
