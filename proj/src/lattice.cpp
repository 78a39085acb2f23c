#include "rtheta/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>

#include "rtheta/errors.hpp"
#include "rtheta/linalg.hpp"

namespace rtheta {

RealMatrix cholesky_upper(const RealMatrix& y) {
    int n = y.rows();
    if (n != y.cols()) throw UnsupportedArgument("cholesky_upper: matrix not square");
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(y(i, j)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(y(i, j) - y(j, i)) > 1e-12 * std::max(scale, 1.0))
                throw UnsupportedArgument("cholesky_upper: matrix not symmetric");

    // T(i,j) for i <= j with Y = T^t T; columnwise elimination.
    RealMatrix t(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
            double sum = 0.5 * (y(i, j) + y(j, i));
            for (int k = 0; k < i; ++k) sum -= t(k, i) * t(k, j);
            if (i == j) {
                if (sum <= 0.0) throw NotPositiveDefinite();
                t(i, j) = std::sqrt(sum);
            } else {
                t(i, j) = sum / t(i, i);
            }
        }
    }
    return t;
}

namespace {

// Gram-Schmidt data for the rows of `b`: mu[i][j] (j < i) and squared norms c.
struct GramSchmidt {
    std::vector<std::vector<double>> mu;
    std::vector<double> c;
};

GramSchmidt gram_schmidt(const RealMatrix& b) {
    int g = b.rows(), d = b.cols();
    GramSchmidt gs;
    gs.mu.assign(g, std::vector<double>(g, 0.0));
    gs.c.assign(g, 0.0);
    std::vector<std::vector<double>> star(g, std::vector<double>(d, 0.0));
    for (int i = 0; i < g; ++i) {
        for (int k = 0; k < d; ++k) star[i][k] = b(i, k);
        for (int j = 0; j < i; ++j) {
            double dot = 0.0;
            for (int k = 0; k < d; ++k) dot += b(i, k) * star[j][k];
            double m = dot / gs.c[j];
            gs.mu[i][j] = m;
            for (int k = 0; k < d; ++k) star[i][k] -= m * star[j][k];
        }
        double norm2 = 0.0;
        for (int k = 0; k < d; ++k) norm2 += star[i][k] * star[i][k];
        if (norm2 < 1e-300) throw DegenerateBasis();
        gs.c[i] = norm2;
        gs.mu[i][i] = 1.0;
    }
    return gs;
}

void row_axpy(RealMatrix& b, int dst, long long r, int src) {
    for (int k = 0; k < b.cols(); ++k) b(dst, k) -= static_cast<double>(r) * b(src, k);
}

void row_axpy(IntMatrix& u, int dst, long long r, int src) {
    for (int k = 0; k < u.cols(); ++k) u(dst, k) -= r * u(src, k);
}

void row_swap(RealMatrix& b, int i, int j) {
    for (int k = 0; k < b.cols(); ++k) std::swap(b(i, k), b(j, k));
}

void row_swap(IntMatrix& u, int i, int j) {
    for (int k = 0; k < u.cols(); ++k) std::swap(u(i, k), u(j, k));
}

}  // namespace

ReducedBasis lll_reduce(const LatticeBasis& basis, double delta) {
    if (delta <= 0.25 || delta >= 1.0)
        throw UnsupportedArgument("lll_reduce: delta outside (1/4, 1)");
    int g = basis.dim();
    RealMatrix b = basis.gen;
    IntMatrix u = IntMatrix::identity(g);
    if (g <= 1) {
        if (g == 1) gram_schmidt(b);  // degeneracy check
        return {LatticeBasis{b}, UnimodularTransform{u}};
    }

    long long guard = 10000LL * g * g;  // cycle guard for floating-point stalls
    int k = 1;
    while (k < g && guard-- > 0) {
        GramSchmidt gs = gram_schmidt(b);
        for (int j = k - 1; j >= 0; --j) {
            long long r = std::llround(gs.mu[k][j]);
            if (r != 0) {
                row_axpy(b, k, r, j);
                row_axpy(u, k, r, j);
                for (int l = 0; l <= j; ++l) gs.mu[k][l] -= static_cast<double>(r) * gs.mu[j][l];
            }
        }
        double m = gs.mu[k][k - 1];
        if (gs.c[k] >= (delta - m * m) * gs.c[k - 1]) {
            ++k;
        } else {
            row_swap(b, k, k - 1);
            row_swap(u, k, k - 1);
            k = std::max(k - 1, 1);
        }
    }
    return {LatticeBasis{b}, UnimodularTransform{u}};
}

namespace {

// Depth-first Schnorr-Euchner enumeration over mu/c.  With collect == nullptr
// finds the strict minimum below *bound2 (updating bound2/best_x); otherwise
// gathers every nonzero x with norm^2 <= *bound2.
struct Enumerator {
    const GramSchmidt* gs;
    int g;
    double* bound2;
    std::vector<long long>* best_x;
    std::vector<std::vector<long long>>* collect;
    std::vector<long long> x;

    void run() {
        x.assign(g, 0);
        descend(g - 1, 0.0);
    }

    void descend(int level, double acc) {
        if (level < 0) {
            bool zero = std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
            if (zero) return;
            if (collect) {
                collect->push_back(x);
            } else if (acc < *bound2) {
                *bound2 = acc;
                *best_x = x;
            }
            return;
        }
        double center = 0.0;
        for (int i = level + 1; i < g; ++i)
            center += static_cast<double>(x[i]) * gs->mu[i][level];
        double room = *bound2 - acc;
        if (room < 0.0) return;
        double half = std::sqrt(room / gs->c[level]);
        long long lo = static_cast<long long>(std::ceil(-center - half - 1e-9));
        long long hi = static_cast<long long>(std::floor(-center + half + 1e-9));
        for (long long v = lo; v <= hi; ++v) {
            double t = static_cast<double>(v) + center;
            double add = gs->c[level] * t * t;
            if (collect ? (acc + add > *bound2 * (1 + 1e-15)) : (acc + add >= *bound2)) continue;
            x[level] = v;
            descend(level - 1, acc + add);
        }
        x[level] = 0;
    }
};

std::vector<long long> to_original_coeffs(const std::vector<long long>& x, const IntMatrix& u) {
    int g = u.rows();
    std::vector<long long> out(g, 0);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) out[j] += x[i] * u(i, j);
    return out;
}

void canonical_sign(std::vector<long long>& v) {
    for (long long e : v) {
        if (e > 0) return;
        if (e < 0) {
            for (long long& w : v) w = -w;
            return;
        }
    }
}

double basis_norm(const std::vector<long long>& coeffs, const RealMatrix& b) {
    double norm2 = 0.0;
    for (int k = 0; k < b.cols(); ++k) {
        double s = 0.0;
        for (int i = 0; i < b.rows(); ++i) s += static_cast<double>(coeffs[i]) * b(i, k);
        norm2 += s * s;
    }
    return std::sqrt(norm2);
}

}  // namespace

ShortestVectorResult shortest_vector(const LatticeBasis& basis) {
    int g = basis.dim();
    ReducedBasis red = lll_reduce(basis, 0.99);
    GramSchmidt gs = gram_schmidt(red.basis.gen);

    // Pass 1: exact minimum.  Seed with the first reduced vector.
    double bound2 = 0.0;
    for (int k = 0; k < red.basis.gen.cols(); ++k)
        bound2 += red.basis.gen(0, k) * red.basis.gen(0, k);
    bound2 *= 1.0 + 1e-12;
    std::vector<long long> best_x(g, 0);
    best_x[0] = 1;
    Enumerator pass1{&gs, g, &bound2, &best_x, nullptr, {}};
    pass1.run();

    // Pass 2: collect all minimizers within relative 1e-12 and canonicalize.
    double min2 = 0.0;
    {
        std::vector<long long> oc = to_original_coeffs(best_x, red.transform.mat);
        double n = basis_norm(oc, basis.gen);
        min2 = n * n;
    }
    double tie_bound = bound2 * (1 + 1e-12);
    std::vector<std::vector<long long>> ties;
    Enumerator pass2{&gs, g, &tie_bound, nullptr, &ties, {}};
    pass2.run();

    std::set<std::vector<long long>> canonical;
    for (const auto& x : ties) {
        std::vector<long long> oc = to_original_coeffs(x, red.transform.mat);
        double n = basis_norm(oc, basis.gen);
        if (n * n > min2 * (1 + 1e-12)) continue;
        canonical_sign(oc);
        canonical.insert(oc);
    }
    std::vector<long long> chosen = *canonical.begin();
    return {chosen, basis_norm(chosen, basis.gen)};
}

namespace {

// Complete a primitive integer vector x to a unimodular matrix whose first row
// is x: reduce x^t to e_1 by elementary row operations N, tracking N^{-1};
// then M = N^{-t}.
IntMatrix complete_to_unimodular(const std::vector<long long>& x) {
    int n = static_cast<int>(x.size());
    std::vector<long long> v = x;
    IntMatrix ninv = IntMatrix::identity(n);

    auto add_rows = [&](long long t, int src, int dst) {
        // N gains "row dst += t * row src"; N^{-1} gains the inverse column op.
        v[dst] += t * v[src];
        for (int r = 0; r < n; ++r) ninv(r, src) -= t * ninv(r, dst);
    };
    auto swap_rows = [&](int i, int j) {
        std::swap(v[i], v[j]);
        for (int r = 0; r < n; ++r) std::swap(ninv(r, i), ninv(r, j));
    };
    auto negate_row = [&](int i) {
        v[i] = -v[i];
        for (int r = 0; r < n; ++r) ninv(r, i) = -ninv(r, i);
    };

    // Euclid across entries until only one survives.
    while (true) {
        int pivot = -1;
        for (int i = 0; i < n; ++i)
            if (v[i] != 0 && (pivot < 0 || std::llabs(v[i]) < std::llabs(v[pivot]))) pivot = i;
        if (pivot < 0) throw SingularTransform("cannot complete zero vector");
        bool others = false;
        for (int i = 0; i < n; ++i) {
            if (i == pivot || v[i] == 0) continue;
            long long q = v[i] / v[pivot];
            add_rows(-q, pivot, i);
            if (v[i] != 0) others = true;
        }
        if (!others) {
            if (pivot != 0) swap_rows(0, pivot);
            if (v[0] < 0) negate_row(0);
            if (v[0] != 1) throw SingularTransform("vector is not primitive");
            break;
        }
    }
    return ninv.transposed();
}

}  // namespace

ReducedBasis hkz_reduce(const LatticeBasis& basis) {
    int g = basis.dim();
    RealMatrix b = basis.gen;
    IntMatrix u = IntMatrix::identity(g);

    for (int k = 0; k < g; ++k) {
        GramSchmidt gs = gram_schmidt(b);
        int m = g - k;
        if (m == 1) break;
        // Projection of rows k..g-1 onto the complement of the first k rows,
        // written in the Gram-Schmidt frame: lower-triangular generator.
        RealMatrix proj(m, m);
        for (int i = k; i < g; ++i)
            for (int j = k; j <= i; ++j)
                proj(i - k, j - k) = gs.mu[i][j] * std::sqrt(gs.c[j]);
        ShortestVectorResult sv = shortest_vector(LatticeBasis{proj});

        // Head of the projected block is b*_k; if it already attains the
        // minimum (ties included) leave the block alone.
        if (gs.c[k] <= sv.norm * sv.norm * (1.0 + 1e-12)) continue;

        IntMatrix mtx = complete_to_unimodular(sv.coeffs);
        RealMatrix nb = b;
        IntMatrix nu = u;
        for (int i = 0; i < m; ++i) {
            for (int col = 0; col < b.cols(); ++col) {
                double s = 0.0;
                for (int j = 0; j < m; ++j)
                    s += static_cast<double>(mtx(i, j)) * b(k + j, col);
                nb(k + i, col) = s;
            }
            for (int col = 0; col < g; ++col) {
                long long s = 0;
                for (int j = 0; j < m; ++j) s += mtx(i, j) * u(k + j, col);
                nu(k + i, col) = s;
            }
        }
        b = nb;
        u = nu;
    }

    // Final size reduction.
    GramSchmidt gs = gram_schmidt(b);
    for (int i = 1; i < g; ++i)
        for (int j = i - 1; j >= 0; --j) {
            long long r = std::llround(gs.mu[i][j]);
            if (r != 0) {
                row_axpy(b, i, r, j);
                row_axpy(u, i, r, j);
                for (int l = 0; l <= j; ++l) gs.mu[i][l] -= static_cast<double>(r) * gs.mu[j][l];
            }
        }
    return {LatticeBasis{b}, UnimodularTransform{u}};
}

namespace {

struct BoxFilter {
    const RealMatrix* y;  // T^t T
    int g;
    double ob;
    double r2_over_pi;   // R^2 / pi
    double lambda_lb;    // certified lower bound on smallest eigenvalue of Y
    std::vector<double> lo, hi, d;

    bool keep(const long long* n) {
        // Certain rejection via the eigenvalue bound.
        double dist2 = 0.0;
        for (int j = 0; j < g; ++j) {
            double e = std::abs(static_cast<double>(n[j])) - ob;
            if (e > 0.0) dist2 += e * e;
        }
        if (lambda_lb * dist2 >= r2_over_pi) return false;

        for (int j = 0; j < g; ++j) {
            lo[j] = static_cast<double>(n[j]) - ob;
            hi[j] = static_cast<double>(n[j]) + ob;
            d[j] = std::clamp(0.0, lo[j], hi[j]);
        }
        if (quad() < r2_over_pi) return true;  // feasible point already inside

        // Coordinate descent on the box-constrained convex quadratic.
        for (int sweep = 0; sweep < 500; ++sweep) {
            double moved = 0.0;
            for (int j = 0; j < g; ++j) {
                double s = 0.0;
                for (int k = 0; k < g; ++k)
                    if (k != j) s += (*y)(j, k) * d[k];
                double nj = std::clamp(-s / (*y)(j, j), lo[j], hi[j]);
                moved = std::max(moved, std::abs(nj - d[j]));
                d[j] = nj;
            }
            if (moved <= 1e-12) break;
        }
        return quad() < r2_over_pi;
    }

    double quad() const {
        double q = 0.0;
        for (int j = 0; j < g; ++j)
            for (int k = 0; k < g; ++k) q += d[j] * (*y)(j, k) * d[k];
        return q;
    }
};

}  // namespace

EllipsoidCache enumerate_deformed_ellipsoid(const RealMatrix& t, double radius,
                                            double offset_bound, long long cap) {
    int g = t.rows();
    if (g != t.cols()) throw UnsupportedArgument("enumerate_deformed_ellipsoid: T not square");
    for (int i = 0; i < g; ++i) {
        if (!(t(i, i) > 0.0))
            throw UnsupportedArgument("enumerate_deformed_ellipsoid: T diagonal not positive");
        for (int j = 0; j < i; ++j)
            if (t(i, j) != 0.0)
                throw UnsupportedArgument("enumerate_deformed_ellipsoid: T not upper-triangular");
    }
    if (!(radius > 0.0)) throw InvalidRadius("enumerate_deformed_ellipsoid: radius must be > 0");
    if (offset_bound < 0.0)
        throw UnsupportedArgument("enumerate_deformed_ellipsoid: negative offset bound");

    const double sqrt_pi = std::sqrt(M_PI);
    double tnorm = spectral_norm(t) * (1.0 + 1e-9);
    // Candidate superset: ||T n|| < bound, bound = (R + sqrt(pi)*|T|*ob*sqrt(g)) / sqrt(pi).
    double bound = radius / sqrt_pi + tnorm * offset_bound * std::sqrt(static_cast<double>(g));
    double bound2 = bound * bound;

    std::vector<long long> candidates;  // flat, g entries per point
    std::vector<long long> n(g, 0);
    std::vector<double> resid(g, 0.0);  // resid[i] = sum_{j>i} T(i,j) n_j

    // Triangular depth-first walk from the last coordinate down.
    auto dfs = [&](auto&& self, int level, double acc) -> void {
        if (level < 0) {
            if (static_cast<long long>(candidates.size()) >= cap * g)
                throw EllipsoidTooLarge();
            candidates.insert(candidates.end(), n.begin(), n.end());
            return;
        }
        double room = bound2 - acc;
        if (room < 0.0) return;
        double half = std::sqrt(room) / t(level, level);
        double center = -resid[level] / t(level, level);
        long long lo = static_cast<long long>(std::ceil(center - half - 1e-9));
        long long hi = static_cast<long long>(std::floor(center + half + 1e-9));
        for (long long v = lo; v <= hi; ++v) {
            double term = t(level, level) * static_cast<double>(v) + resid[level];
            double add = term * term;
            if (acc + add > bound2 * (1 + 1e-15)) continue;
            n[level] = v;
            for (int i = 0; i < level; ++i)
                resid[i] += t(i, level) * static_cast<double>(v);
            self(self, level - 1, acc + add);
            for (int i = 0; i < level; ++i)
                resid[i] -= t(i, level) * static_cast<double>(v);
        }
        n[level] = 0;
    };
    dfs(dfs, g - 1, 0.0);

    RealMatrix y(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            double s = 0.0;
            for (int k = 0; k <= std::min(i, j); ++k) s += t(k, i) * t(k, j);
            y(i, j) = s;
        }
    double tinv_norm = spectral_norm(upper_triangular_inverse(t));
    BoxFilter filter{&y,
                     g,
                     offset_bound,
                     radius * radius / M_PI,
                     1.0 / ((tinv_norm * 1.01) * (tinv_norm * 1.01)),
                     std::vector<double>(g),
                     std::vector<double>(g),
                     std::vector<double>(g)};

    std::vector<long long> kept;
    kept.reserve(candidates.size());
    size_t npts = candidates.size() / g;
    for (size_t p = 0; p < npts; ++p) {
        const long long* pt = candidates.data() + p * g;
        if (filter.keep(pt)) kept.insert(kept.end(), pt, pt + g);
    }
    candidates.clear();
    candidates.shrink_to_fit();

    // Lexicographic order on the point tuples.
    size_t nkept = kept.size() / g;
    std::vector<size_t> idx(nkept);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        const long long* pa = kept.data() + a * g;
        const long long* pb = kept.data() + b * g;
        return std::lexicographical_compare(pa, pa + g, pb, pb + g);
    });

    EllipsoidCache cache;
    cache.dim = g;
    cache.radius = radius;
    cache.points.reserve(kept.size());
    for (size_t i : idx) {
        const long long* pt = kept.data() + i * g;
        cache.points.insert(cache.points.end(), pt, pt + g);
    }
    return cache;
}

}  // namespace rtheta
