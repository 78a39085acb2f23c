#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rtheta/errors.hpp"
#include "rtheta/linalg.hpp"
#include "rtheta/matrix.hpp"

using namespace rtheta;

TEST_CASE("det_exact small cases") {
    CHECK(det_exact(IntMatrix::identity(4)) == 1);
    IntMatrix m{{2, 1}, {1, 1}};
    CHECK(det_exact(m) == 1);
    IntMatrix s{{0, 1}, {1, 0}};
    CHECK(det_exact(s) == -1);
    IntMatrix sing{{1, 2}, {2, 4}};
    CHECK(det_exact(sing) == 0);
    IntMatrix big{{3, -1, 2}, {0, 4, 1}, {5, 2, -2}};
    // cofactor expansion by hand: 3*(-8-2) - (-1)*(0-5) + 2*(0-20)
    CHECK(det_exact(big) == -75);
}

TEST_CASE("unimodular_inverse round trip") {
    IntMatrix m{{1, 2, 0}, {0, 1, 3}, {0, 0, 1}};
    IntMatrix inv = unimodular_inverse(m);
    CHECK(m * inv == IntMatrix::identity(3));
    CHECK(inv * m == IntMatrix::identity(3));
    IntMatrix notuni{{2, 0}, {0, 1}};
    CHECK_THROWS_AS(unimodular_inverse(notuni), SingularTransform);
}

TEST_CASE("spectral_norm on known matrices") {
    RealMatrix d{{3.0, 0.0}, {0.0, 1.0}};
    CHECK(spectral_norm(d) == doctest::Approx(3.0).epsilon(1e-12));
    RealMatrix r{{0.0, 2.0}, {0.0, 0.0}};
    CHECK(spectral_norm(r) == doctest::Approx(2.0).epsilon(1e-12));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        RealMatrix a = oracles::random_matrix(rng, 4, 4, -2.0, 2.0);
        ComplexMatrix ac(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) ac(i, j) = a(i, j);
        double sigma = singular_values(ac).front();
        CHECK(spectral_norm(a) == doctest::Approx(sigma).epsilon(1e-8));
    }
}

TEST_CASE("upper_triangular_inverse") {
    RealMatrix t{{2.0, 1.0, -1.0}, {0.0, 4.0, 0.5}, {0.0, 0.0, 1.5}};
    RealMatrix inv = upper_triangular_inverse(t);
    RealMatrix prod = t * inv;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    RealMatrix bad{{1.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(upper_triangular_inverse(bad), DegenerateBasis);
}

TEST_CASE("spd_solve and spd_inverse") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        RealMatrix s = oracles::random_spd(rng, 4);
        std::vector<double> b(4);
        for (double& v : b) v = oracles::uniform(rng, -1.0, 1.0);
        std::vector<double> x = spd_solve(s, b);
        std::vector<double> back = s.apply(x);
        for (int i = 0; i < 4; ++i) CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-9));
        RealMatrix inv = spd_inverse(s);
        RealMatrix prod = s * inv;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(5e-9));
    }
    RealMatrix notpd{{1.0, 2.0}, {2.0, 1.0}};
    CHECK_THROWS_AS(spd_solve(notpd, std::vector<double>(2, 1.0)), NotPositiveDefinite);
}

TEST_CASE("complex_inverse") {
    ComplexMatrix a{{cplx(1, 1), cplx(0, 2)}, {cplx(-1, 0), cplx(3, -1)}};
    double cond = 0.0;
    ComplexMatrix inv = complex_inverse(a, &cond);
    ComplexMatrix prod = a * inv;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(prod(i, j) - (i == j ? cplx(1) : cplx(0))) < 1e-12);
    CHECK(cond > 1.0);
    ComplexMatrix sing{{cplx(1, 0), cplx(2, 0)}, {cplx(2, 0), cplx(4, 0)}};
    CHECK_THROWS_AS(complex_inverse(sing), SingularTransform);
}

TEST_CASE("complex_eigenvalues on known spectra") {
    ComplexMatrix d(3, 3);
    d(0, 0) = cplx(2, 1);
    d(1, 1) = cplx(-1, 0.5);
    d(2, 2) = cplx(0.1, -0.2);
    auto eig = complex_eigenvalues(d);
    REQUIRE(eig.size() == 3);
    CHECK(std::abs(eig[0] - cplx(2, 1)) < 1e-10);
    CHECK(std::abs(eig[1] - cplx(-1, 0.5)) < 1e-10);
    CHECK(std::abs(eig[2] - cplx(0.1, -0.2)) < 1e-10);

    // Companion matrix of z^3 - 6z^2 + 11z - 6 = (z-1)(z-2)(z-3).
    ComplexMatrix comp(3, 3);
    comp(0, 0) = 6.0;
    comp(0, 1) = -11.0;
    comp(0, 2) = 6.0;
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    eig = complex_eigenvalues(comp);
    CHECK(std::abs(eig[0] - cplx(3)) < 1e-9);
    CHECK(std::abs(eig[1] - cplx(2)) < 1e-9);
    CHECK(std::abs(eig[2] - cplx(1)) < 1e-9);

    // Trace and determinant consistency on random complex matrices.
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexMatrix a(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                a(i, j) = cplx(oracles::uniform(rng, -1, 1), oracles::uniform(rng, -1, 1));
        auto ev = complex_eigenvalues(a);
        cplx tr = 0.0, sum = 0.0;
        for (int i = 0; i < 4; ++i) tr += a(i, i);
        for (cplx e : ev) sum += e;
        CHECK(std::abs(tr - sum) < 1e-9);
    }
}

TEST_CASE("singular_values basics") {
    auto sv = singular_values(ComplexMatrix::identity(5));
    REQUIRE(sv.size() == 5);
    for (double s : sv) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));

    ComplexMatrix rank1(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rank1(i, j) = cplx(1.0, 0.0);
    sv = singular_values(rank1);
    CHECK(sv[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sv[1] < 1e-12);
    CHECK(sv[2] < 1e-12);

    // Rectangular: row vector (3, 4) has the single singular value 5.
    ComplexMatrix row(1, 2);
    row(0, 0) = 3.0;
    row(0, 1) = 4.0;
    sv = singular_values(row);
    CHECK(sv.front() == doctest::Approx(5.0).epsilon(1e-12));
}
