#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rtheta/bounds.hpp"
#include "rtheta/errors.hpp"

using namespace rtheta;

TEST_CASE("incomplete_gamma_upper closed forms") {
    CHECK(incomplete_gamma_upper(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(incomplete_gamma_upper(0.5, 0.0) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(incomplete_gamma_upper(2.5, 1.3) ==
          doctest::Approx(oracles::gamma_upper_quadrature(2.5, 1.3)).epsilon(1e-12));
    CHECK_THROWS_AS(incomplete_gamma_upper(0.3, 1.0), UnsupportedArgument);
    CHECK_THROWS_AS(incomplete_gamma_upper(-0.5, 1.0), UnsupportedArgument);
    CHECK_THROWS_AS(incomplete_gamma_upper(1.0, -1.0), UnsupportedArgument);
}

TEST_CASE("incomplete_gamma_upper at zero equals complete gamma") {
    // s = 1/2, 1, 3/2, ..., 6
    double expect[] = {std::sqrt(M_PI),           1.0,
                       std::sqrt(M_PI) / 2.0,     1.0,
                       3.0 * std::sqrt(M_PI) / 4.0, 2.0,
                       15.0 * std::sqrt(M_PI) / 8.0, 6.0,
                       105.0 * std::sqrt(M_PI) / 16.0, 24.0,
                       945.0 * std::sqrt(M_PI) / 32.0, 120.0};
    for (int k = 1; k <= 12; ++k) {
        double s = 0.5 * k;
        CHECK(incomplete_gamma_upper(s, 0.0) == doctest::Approx(expect[k - 1]).epsilon(1e-13));
    }
}

TEST_CASE("incomplete_gamma_upper matches quadrature broadly") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int k = 1 + static_cast<int>(rng() % 12);
        double s = 0.5 * k;
        double x = oracles::uniform(rng, 0.0, 9.0);
        double got = incomplete_gamma_upper(s, x);
        double want = oracles::gamma_upper_quadrature(s, x);
        CHECK(got == doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("error_bound structure") {
    ErrorBoundParams p{2, 0, 1.5, 1.0, 1e-10};
    // N = 0 collapses to the single j = 0 term.
    double direct = (2.0 / 2.0) * std::pow(2.0 / 1.5, 2) *
                    incomplete_gamma_upper(1.0, (3.0 - 0.75) * (3.0 - 0.75));
    CHECK(error_bound(3.0, p) == doctest::Approx(direct).epsilon(1e-13));

    // Strictly decreasing in R.
    CHECK(error_bound(2.0, p) > error_bound(2.5, p));
    CHECK(error_bound(2.5, p) > error_bound(3.0, p));

    CHECK_THROWS_AS(error_bound(0.7, p), InvalidRadius);

    // Hand-expanded two-term sum, each Gamma from the quadrature oracle.
    ErrorBoundParams p1{2, 1, 1.5, 1.0, 1e-10};
    double arg = (3.0 - 0.75) * (3.0 - 0.75);
    double term0 = std::sqrt(2.0) * oracles::gamma_upper_quadrature(1.0, arg);
    double term1 = (1.0 / std::sqrt(M_PI)) * oracles::gamma_upper_quadrature(1.5, arg);
    double expect = (2.0 * M_PI) * (2.0 / 2.0) * std::pow(2.0 / 1.5, 2) * (term0 + term1);
    CHECK(error_bound(3.0, p1) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("solve_radius") {
    // Huge eps: the closed-form floor R0 dominates.
    ErrorBoundParams huge{1, 0, std::sqrt(M_PI), 1.0, 1e6};
    double r0 = 0.5 * std::sqrt(2.0) + std::sqrt(M_PI) / 2.0;
    CHECK(solve_radius(huge) == doctest::Approx(r0).epsilon(1e-12));

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        ErrorBoundParams p;
        p.genus = 1 + static_cast<int>(rng() % 5);
        p.order = static_cast<int>(rng() % 4);
        p.rho = oracles::uniform(rng, 0.3, 3.0);
        p.tinv_norm = oracles::uniform(rng, 0.2, 4.0);
        p.eps = std::pow(10.0, oracles::uniform(rng, -14.0, -2.0));
        double r = solve_radius(p);
        CHECK(error_bound(r, p) <= p.eps * (1 + 1e-9));
        // Idempotent and monotone in eps.
        CHECK(solve_radius(p) == doctest::Approx(r).epsilon(1e-14));
        ErrorBoundParams tighter = p;
        tighter.eps = p.eps / 100.0;
        CHECK(solve_radius(tighter) >= r - 1e-10);
    }

    // Radii are non-decreasing in the derivative order.
    for (int trial = 0; trial < 20; ++trial) {
        ErrorBoundParams p;
        p.genus = 1 + static_cast<int>(rng() % 4);
        p.rho = oracles::uniform(rng, 0.4, 2.5);
        p.tinv_norm = oracles::uniform(rng, 0.2, 3.0);
        p.eps = 1e-12;
        double prev = 0.0;
        for (int n = 0; n <= 4; ++n) {
            p.order = n;
            double r = solve_radius(p);
            CHECK(r >= prev - 1e-12);
            prev = r;
        }
    }
}
