#pragma once

#include <cstdint>

#include "rtheta/matrix.hpp"

namespace rtheta {

// Integer 2g x 2g matrix acting on the Siegel upper-half space by
// tau -> (A tau + B)(C tau + D)^{-1}, blocks [[A, B], [C, D]].
struct SymplecticTransform {
    IntMatrix mat;

    int genus() const { return mat.rows() / 2; }
    IntMatrix block_a() const { return block(0, 0); }
    IntMatrix block_b() const { return block(0, 1); }
    IntMatrix block_c() const { return block(1, 0); }
    IntMatrix block_d() const { return block(1, 1); }

    static SymplecticTransform identity(int g) {
        return {IntMatrix::identity(2 * g)};
    }

    // Exact integer check of Gamma^t J Gamma = J (128-bit accumulators).
    bool is_symplectic() const;

    SymplecticTransform compose(const SymplecticTransform& inner) const {
        return {mat * inner.mat};
    }

  private:
    IntMatrix block(int bi, int bj) const {
        int g = genus();
        IntMatrix out(g, g);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) out(i, j) = mat(bi * g + i, bj * g + j);
        return out;
    }
};

struct SiegelReduction {
    ComplexMatrix tau;
    SymplecticTransform gamma;
    bool stalled = false;
    int iterations = 0;
};

// Round to nearest integer, ties to even, exactly.
double round_half_even(double v);

// tau -> (A tau + B)(C tau + D)^{-1}, symmetrized.
// Throws SingularTransform if C tau + D is numerically singular
// (condition estimate above 1e12).
ComplexMatrix apply_symplectic(const SymplecticTransform& gamma, const ComplexMatrix& tau);

// Siegel reduction loop: HKZ-reduce Im tau, shift Re tau to [-1/2, 1/2],
// invert in the first coordinate while |tau_11| < 1.  Caps at 300 rounds;
// on a cap hit the result carries stalled = true after one last
// reduce-and-shift pass.
SiegelReduction siegel_reduce(const ComplexMatrix& tau);

// Random tau = (M_X + M_X^t)/2 + i M_Y^t M_Y with entries of M_X, M_Y drawn
// uniformly from [-1, 1]; deterministic per seed.
ComplexMatrix random_siegel(int g, uint64_t seed);

}  // namespace rtheta
