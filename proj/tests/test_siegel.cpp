#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rtheta/errors.hpp"
#include "rtheta/lattice.hpp"
#include "rtheta/siegel.hpp"

using namespace rtheta;

namespace {

double rho_of(const ComplexMatrix& tau) {
    RealMatrix t = cholesky_upper(imag_part(tau));
    int g = t.rows();
    RealMatrix gen(g, g);
    double sp = std::sqrt(M_PI);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) gen(i, j) = sp * t(j, i);
    return shortest_vector(LatticeBasis{gen}).norm;
}

}  // namespace

TEST_CASE("round_half_even") {
    CHECK(round_half_even(0.5) == 0.0);
    CHECK(round_half_even(1.5) == 2.0);
    CHECK(round_half_even(2.5) == 2.0);
    CHECK(round_half_even(-0.5) == 0.0);
    CHECK(round_half_even(-1.5) == -2.0);
    CHECK(round_half_even(0.49) == 0.0);
    CHECK(round_half_even(0.51) == 1.0);
    CHECK(round_half_even(-3.2) == -3.0);
}

TEST_CASE("SymplecticTransform checks") {
    CHECK(SymplecticTransform::identity(3).is_symplectic());
    // J itself is symplectic.
    IntMatrix j(4, 4);
    j(0, 2) = 1;
    j(1, 3) = 1;
    j(2, 0) = -1;
    j(3, 1) = -1;
    CHECK(SymplecticTransform{j}.is_symplectic());
    // A diagonal scaling is not.
    IntMatrix bad = IntMatrix::identity(4);
    bad(0, 0) = 2;
    CHECK_FALSE(SymplecticTransform{bad}.is_symplectic());
}

TEST_CASE("apply_symplectic examples") {
    ComplexMatrix tau(2, 2);
    tau(0, 0) = cplx(0.1, 1.0);
    tau(0, 1) = tau(1, 0) = cplx(0.05, 0.2);
    tau(1, 1) = cplx(-0.2, 0.9);

    ComplexMatrix same = apply_symplectic(SymplecticTransform::identity(2), tau);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(same(i, j) - tau(i, j)) < 1e-13);

    // Translation block: tau + B.
    SymplecticTransform shift = SymplecticTransform::identity(2);
    shift.mat(0, 2) = 3;
    shift.mat(0, 3) = 1;
    shift.mat(1, 2) = 1;
    shift.mat(1, 3) = -2;
    CHECK(shift.is_symplectic());
    ComplexMatrix moved = apply_symplectic(shift, tau);
    CHECK(std::abs(moved(0, 0) - (tau(0, 0) + 3.0)) < 1e-13);
    CHECK(std::abs(moved(0, 1) - (tau(0, 1) + 1.0)) < 1e-13);
    CHECK(std::abs(moved(1, 1) - (tau(1, 1) - 2.0)) < 1e-13);

    // Genus-1 inversion.
    ComplexMatrix t1(1, 1);
    t1(0, 0) = cplx(0.3, 0.8);
    IntMatrix inv(2, 2);
    inv(0, 1) = -1;
    inv(1, 0) = 1;
    CHECK(SymplecticTransform{inv}.is_symplectic());
    ComplexMatrix r = apply_symplectic(SymplecticTransform{inv}, t1);
    CHECK(r(0, 0).real() == doctest::Approx(-0.3 / 0.73).epsilon(1e-12));
    CHECK(r(0, 0).imag() == doctest::Approx(0.8 / 0.73).epsilon(1e-12));

    // Singular C tau + D (tau = 0 is outside H_g, the guard must fire).
    ComplexMatrix zero(1, 1);
    CHECK_THROWS_AS(apply_symplectic(SymplecticTransform{inv}, zero), SingularTransform);
}

TEST_CASE("siegel_reduce examples") {
    ComplexMatrix tau = to_complex(RealMatrix(3, 3), RealMatrix::identity(3));
    SiegelReduction red = siegel_reduce(tau);
    CHECK(red.gamma.mat == IntMatrix::identity(6));
    CHECK_FALSE(red.stalled);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(red.tau(i, j) - tau(i, j)) < 1e-13);

    ComplexMatrix t1(1, 1);
    t1(0, 0) = cplx(0.3, 0.8);
    red = siegel_reduce(t1);
    CHECK(red.tau(0, 0).real() == doctest::Approx(-0.410958904109589).epsilon(1e-9));
    CHECK(red.tau(0, 0).imag() == doctest::Approx(1.095890410958904).epsilon(1e-9));
    CHECK(red.gamma.is_symplectic());

    // Genus-1 oracle across a spread of inputs.
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        cplx t(oracles::uniform(rng, -3.0, 3.0), oracles::uniform(rng, 0.05, 2.0));
        ComplexMatrix m(1, 1);
        m(0, 0) = t;
        SiegelReduction r = siegel_reduce(m);
        cplx expect = oracles::reduce_genus1(t);
        CHECK(std::abs(r.tau(0, 0) - expect) < 1e-9);
    }
}

TEST_CASE("siegel_reduce properties on random g=5 samples") {
    int rho_improved = 0;
    int samples = 500;
    for (int i = 0; i < samples; ++i) {
        ComplexMatrix tau = random_siegel(5, 9000 + i);
        SiegelReduction red = siegel_reduce(tau);
        CHECK(red.gamma.is_symplectic());
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 5; ++c)
                CHECK(std::abs(red.tau(r, c).real()) <= 0.5 + 1e-9);
        if (i < 100) {
            // Consistency with the one-shot symplectic action.
            ComplexMatrix direct = apply_symplectic(red.gamma, tau);
            double scale = 0.0, err = 0.0;
            for (int r = 0; r < 5; ++r)
                for (int c = 0; c < 5; ++c) {
                    scale = std::max(scale, std::abs(direct(r, c)));
                    err = std::max(err, std::abs(direct(r, c) - red.tau(r, c)));
                }
            CHECK(err <= 1e-9 * std::max(scale, 1.0));
            // Im stays positive definite.
            CHECK_NOTHROW(cholesky_upper(imag_part(red.tau)));
        }
        if (rho_of(red.tau) >= rho_of(tau) * (1 - 1e-9)) ++rho_improved;
    }
    CHECK(rho_improved >= samples * 95 / 100);
}

TEST_CASE("siegel_reduce is stable on already-reduced input") {
    for (int i = 0; i < 10; ++i) {
        ComplexMatrix tau = random_siegel(4, 333 + i);
        SiegelReduction first = siegel_reduce(tau);
        SiegelReduction again = siegel_reduce(first.tau);
        CHECK(again.iterations == 1);
        CHECK_FALSE(again.stalled);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                CHECK(std::abs(again.tau(r, c)) ==
                      doctest::Approx(std::abs(first.tau(r, c))).epsilon(1e-9));
    }
}

TEST_CASE("random_siegel contract") {
    ComplexMatrix a = random_siegel(4, 77);
    ComplexMatrix b = random_siegel(4, 77);
    CHECK(a == b);  // bit-identical
    ComplexMatrix c = random_siegel(4, 78);
    CHECK_FALSE(a == c);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(a(i, j) == a(j, i));
    for (int seed = 0; seed < 1000; ++seed)
        CHECK_NOTHROW(cholesky_upper(imag_part(random_siegel(5, seed))));
}
