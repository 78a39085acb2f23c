#include "rtheta/siegel.hpp"

#include <cmath>
#include <random>

#include "rtheta/errors.hpp"
#include "rtheta/lattice.hpp"
#include "rtheta/linalg.hpp"

namespace rtheta {

bool SymplecticTransform::is_symplectic() const {
    int n = mat.rows();
    if (n == 0 || n % 2 != 0 || mat.cols() != n) return false;
    int g = n / 2;
    // J has blocks [[0, I], [-I, 0]]; check (Gamma^t J Gamma)(i,j) entrywise.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            __int128 acc = 0;
            for (int k = 0; k < g; ++k) {
                // row i of Gamma^t is column i of Gamma; J couples k <-> g+k
                acc += static_cast<__int128>(mat(k, i)) * mat(g + k, j);
                acc -= static_cast<__int128>(mat(g + k, i)) * mat(k, j);
            }
            __int128 want = 0;
            if (j == i + g) want = 1;
            if (i == j + g) want = -1;
            if (acc != want) return false;
        }
    return true;
}

double round_half_even(double v) { return v - std::remainder(v, 1.0); }

ComplexMatrix apply_symplectic(const SymplecticTransform& gamma, const ComplexMatrix& tau) {
    int g = tau.rows();
    RealMatrix a = to_real(gamma.block_a()), b = to_real(gamma.block_b());
    RealMatrix c = to_real(gamma.block_c()), d = to_real(gamma.block_d());

    ComplexMatrix num(g, g), den(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            cplx sn = b(i, j), sd = d(i, j);
            for (int k = 0; k < g; ++k) {
                sn += a(i, k) * tau(k, j);
                sd += c(i, k) * tau(k, j);
            }
            num(i, j) = sn;
            den(i, j) = sd;
        }
    double cond = 0.0;
    ComplexMatrix den_inv = complex_inverse(den, &cond);
    if (cond > 1e12) throw SingularTransform("C*tau + D ill-conditioned");
    ComplexMatrix out = num * den_inv;
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) {
            cplx v = 0.5 * (out(i, j) + out(j, i));
            out(i, j) = out(j, i) = v;
        }
    return out;
}

namespace {

// Symplectic embedding of a unimodular U as diag(U, U^{-t}): tau -> U tau U^t.
SymplecticTransform embed_unimodular(const IntMatrix& u) {
    int g = u.rows();
    IntMatrix uinv = unimodular_inverse(u);
    IntMatrix m(2 * g, 2 * g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            m(i, j) = u(i, j);
            m(g + i, g + j) = uinv(j, i);  // U^{-t}
        }
    return {m};
}

SymplecticTransform embed_shift(const IntMatrix& b) {
    int g = b.rows();
    IntMatrix m = IntMatrix::identity(2 * g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) m(i, g + j) = b(i, j);
    return {m};
}

// Genus-1 inversion z -> -1/z embedded in the first coordinate.
SymplecticTransform embed_first_inversion(int g) {
    IntMatrix m = IntMatrix::identity(2 * g);
    m(0, 0) = 0;
    m(g, g) = 0;
    m(0, g) = -1;
    m(g, 0) = 1;
    return {m};
}

ComplexMatrix conjugate_by(const IntMatrix& u, const ComplexMatrix& tau) {
    int g = tau.rows();
    ComplexMatrix out(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < g; ++k)
                for (int l = 0; l < g; ++l)
                    s += static_cast<double>(u(i, k)) * tau(k, l) * static_cast<double>(u(j, l));
            out(i, j) = s;
        }
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) {
            cplx v = 0.5 * (out(i, j) + out(j, i));
            out(i, j) = out(j, i) = v;
        }
    return out;
}

// One HKZ-and-shift pass; updates tau and gamma in place.
void reduce_pass(ComplexMatrix& tau, SymplecticTransform& gamma) {
    int g = tau.rows();
    RealMatrix t = cholesky_upper(imag_part(tau));
    // Basis rows with Gram matrix Y: rows of T^t.
    ReducedBasis red = hkz_reduce(LatticeBasis{t.transposed()});
    const IntMatrix& u = red.transform.mat;
    bool is_id = (u == IntMatrix::identity(g));
    if (!is_id) {
        tau = conjugate_by(u, tau);
        gamma = embed_unimodular(u).compose(gamma);
    }

    IntMatrix shift(g, g);
    bool any = false;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            long long r = std::llround(round_half_even(tau(i, j).real()));
            shift(i, j) = -r;
            if (r != 0) any = true;
        }
    // Symmetrize the integer shift; rounding a symmetric matrix entrywise is
    // symmetric already, this guards fp asymmetry remnants.
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) shift(j, i) = shift(i, j);
    if (any) {
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j)
                tau(i, j) += static_cast<double>(shift(i, j));
        gamma = embed_shift(shift).compose(gamma);
    }
}

}  // namespace

SiegelReduction siegel_reduce(const ComplexMatrix& tau_in) {
    int g = tau_in.rows();
    ComplexMatrix tau = tau_in;
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) {
            cplx v = 0.5 * (tau(i, j) + tau(j, i));
            tau(i, j) = tau(j, i) = v;
        }
    SiegelReduction out;
    out.gamma = SymplecticTransform::identity(g);

    const int cap = 300;
    int it = 0;
    for (; it < cap; ++it) {
        reduce_pass(tau, out.gamma);
        if (std::abs(tau(0, 0)) < 1.0) {
            SymplecticTransform inv1 = embed_first_inversion(g);
            tau = apply_symplectic(inv1, tau);
            out.gamma = inv1.compose(out.gamma);
        } else {
            break;
        }
    }
    if (it == cap) {
        reduce_pass(tau, out.gamma);  // restore the real-part bound
        out.stalled = true;
    }
    out.tau = tau;
    out.iterations = it + 1;
    return out;
}

ComplexMatrix random_siegel(int g, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() {
        // uniform in [-1, 1] from the top 53 bits, bit-deterministic
        return static_cast<double>(rng() >> 11) * 0x1p-53 * 2.0 - 1.0;
    };
    while (true) {
        RealMatrix mx(g, g), my(g, g);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) mx(i, j) = unit();
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) my(i, j) = unit();
        RealMatrix re(g, g), im(g, g);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                re(i, j) = 0.5 * (mx(i, j) + mx(j, i));
                double s = 0.0;
                for (int k = 0; k < g; ++k) s += my(k, i) * my(k, j);
                im(i, j) = s;
            }
        try {
            cholesky_upper(im);
        } catch (const NotPositiveDefinite&) {
            continue;  // measure-zero event; redraw
        }
        return to_complex(re, im);
    }
}

}  // namespace rtheta
