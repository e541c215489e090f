#include <doctest.h>

#include <cmath>
#include <random>

#include "bdbgeo/airy.hpp"
#include "bdbgeo/errors.hpp"
#include "oracles.hpp"

using namespace bdbgeo;

TEST_CASE("values at zero match the closed forms") {
    // Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3); digits
    // cross-checked against the Gamma-based oracle below.
    const auto v = airy_ai(0.0);
    CHECK(v.ai == doctest::Approx(0.35502805388781723926).epsilon(1e-14));
    CHECK(v.ai_prime == doctest::Approx(-0.25881940379280679840).epsilon(1e-14));
    const auto o = oracles::airy(0.0L);
    CHECK(std::fabs(v.ai - static_cast<double>(o.ai)) < 1e-14);
    CHECK(std::fabs(v.ai_prime - static_cast<double>(o.ai_prime)) < 1e-14);
}

TEST_CASE("absolute accuracy 1e-10 against the oracle across [-20, 9]") {
    double worst = 0.0, worst_p = 0.0;
    for (double w = -20.0; w <= -8.0; w += 0.25) {
        const auto v = airy_ai(w);
        const auto o = oracles::airy(w);
        worst = std::max(worst, std::fabs(v.ai - static_cast<double>(o.ai)));
        worst_p = std::max(worst_p, std::fabs(v.ai_prime - static_cast<double>(o.ai_prime)));
    }
    for (double w = -8.0; w <= 9.0; w += 0.1) {
        const auto v = airy_ai(w);
        const auto o = oracles::airy(w);
        worst = std::max(worst, std::fabs(v.ai - static_cast<double>(o.ai)));
        worst_p = std::max(worst_p, std::fabs(v.ai_prime - static_cast<double>(o.ai_prime)));
    }
    CHECK(worst <= 1e-10);
    CHECK(worst_p <= 1e-10);
}

TEST_CASE("decay at w = 10, cross-checked by quadrature") {
    const auto v = airy_ai(10.0);
    CHECK(v.ai < 1e-9);
    CHECK(v.ai > 0.0);
    const double q = airy_integral_check(10.0, 50.0, 100000);
    CHECK(std::fabs(q - v.ai) < 1e-10);
    // the series oracle runs out of headroom above w ~ 9; quadrature covers
    // the rest of the contracted range
    for (double w : {9.2, 9.5, 9.8})
        CHECK(std::fabs(airy_integral_check(w, 50.0, 100000) - airy_ai(w).ai) < 1e-10);
}

TEST_CASE("dense random-point agreement with the oracle") {
    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> pick(-12.0, 9.0);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        const double w = pick(rng);
        const auto v = airy_ai(w);
        const auto o = oracles::airy(w);
        worst = std::max({worst, std::fabs(v.ai - static_cast<double>(o.ai)),
                          std::fabs(v.ai_prime - static_cast<double>(o.ai_prime))});
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("branch bookkeeping and input validation") {
    CHECK(airy_ai(0.0).method == AiryMethod::series);
    CHECK(airy_ai(6.0).method == AiryMethod::asymptotic);
    CHECK(airy_ai(-9.0).method == AiryMethod::asymptotic);
    CHECK_THROWS_AS(airy_ai(std::nan("")), DomainError);
    CHECK_THROWS_AS(airy_ai(INFINITY), DomainError);
}

TEST_CASE("branches agree through the overlap windows") {
    double disagree = 0.0;
    for (double w = 4.7; w <= 5.5; w += 0.02) {
        double a1, p1, a2, p2;
        detail::airy_series(w, a1, p1);
        detail::airy_asymptotic_pos(w, a2, p2);
        disagree = std::max({disagree, std::fabs(a1 - a2), std::fabs(p1 - p2)});
    }
    for (double w = -8.0; w <= -6.5; w += 0.02) {
        double a1, p1, a2, p2;
        detail::airy_series(w, a1, p1);
        detail::airy_asymptotic_neg(w, a2, p2);
        disagree = std::max({disagree, std::fabs(a1 - a2), std::fabs(p1 - p2)});
    }
    CHECK(disagree <= 1e-10);
}

TEST_CASE("solution property: Ai'' - w Ai = 0 via finite differences") {
    // 100 points in [-5, 2], step 1e-3.
    const double h = 1e-3;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double w = -5.0 + 7.0 * i / 99.0;
        const double d2 = (airy_ai(w + h).ai - 2.0 * airy_ai(w).ai + airy_ai(w - h).ai) / (h * h);
        worst = std::max(worst, std::fabs(d2 - w * airy_ai(w).ai));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("boundedness on the oscillatory side") {
    for (double w = -10.0; w <= 5.0; w += 0.05)
        CHECK(std::fabs(airy_ai(w).ai) <= 0.54);
}

TEST_CASE("integral representation agrees with the evaluator") {
    // matches the series value at w = 0 ...
    const double at0 = airy_integral_check(0.0, 50.0, 100000);
    CHECK(std::fabs(at0 - 0.3550280539) < 1e-6);
    // ... and the evaluator at w = 1 and across [-5, 2]
    CHECK(std::fabs(airy_integral_check(1.0, 50.0, 100000) - airy_ai(1.0).ai) < 1e-6);
    for (double w = -5.0; w <= 2.0; w += 0.5)
        CHECK(std::fabs(airy_integral_check(w, 60.0, 200000) - airy_ai(w).ai) < 1e-6);
}

TEST_CASE("integral truncation and preconditions") {
    CHECK_THROWS_AS(airy_integral_check(0.0, 0.001, 1000), AccuracyError);
    try {
        airy_integral_check(0.0, 0.001, 1000);
    } catch (const AccuracyError& e) {
        CHECK(e.tail_estimate > 1e-8);
    }
    CHECK_THROWS_AS(airy_integral_check(0.0, -1.0, 1000), PreconditionError);
    CHECK_THROWS_AS(airy_integral_check(0.0, 50.0, 99), PreconditionError);
}

TEST_CASE("first zero of Ai from the oracle root finder") {
    const double z1 = oracles::airy_first_zero();
    CHECK(z1 == doctest::Approx(-2.33810741045976704).epsilon(1e-12));
    CHECK(std::fabs(airy_ai(z1).ai) < 1e-12);
}
