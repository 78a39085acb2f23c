#include "rtheta/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "rtheta/errors.hpp"

namespace rtheta {

double spectral_norm(const RealMatrix& a) {
    int n = a.cols();
    if (n == 0) return 0.0;
    std::vector<double> v(n, 1.0);
    double nv = std::sqrt(static_cast<double>(n));
    for (double& x : v) x /= nv;
    double lam = 0.0;
    for (int it = 0; it < 50; ++it) {
        // w = A^T (A v)
        std::vector<double> av(a.rows(), 0.0);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < n; ++j) av[i] += a(i, j) * v[j];
        std::vector<double> w(n, 0.0);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < n; ++j) w[j] += a(i, j) * av[i];
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (int j = 0; j < n; ++j) v[j] = w[j] / norm;
        lam = norm;
    }
    return std::sqrt(lam);
}

RealMatrix upper_triangular_inverse(const RealMatrix& t) {
    int n = t.rows();
    RealMatrix inv(n, n);
    for (int j = n - 1; j >= 0; --j) {
        if (t(j, j) == 0.0) throw DegenerateBasis("triangular matrix has zero diagonal");
        inv(j, j) = 1.0 / t(j, j);
        for (int i = j - 1; i >= 0; --i) {
            double s = 0.0;
            for (int k = i + 1; k <= j; ++k) s += t(i, k) * inv(k, j);
            inv(i, j) = -s / t(i, i);
        }
    }
    return inv;
}

namespace {

// Cholesky factor L (lower) of SPD matrix, L L^T = s.
RealMatrix cholesky_lower(const RealMatrix& s) {
    int n = s.rows();
    RealMatrix l(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = s(i, j);
            for (int k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            if (i == j) {
                if (sum <= 0.0) throw NotPositiveDefinite();
                l(i, i) = std::sqrt(sum);
            } else {
                l(i, j) = sum / l(j, j);
            }
        }
    }
    return l;
}

}  // namespace

std::vector<double> spd_solve(const RealMatrix& s, const std::vector<double>& b) {
    int n = s.rows();
    RealMatrix l = cholesky_lower(s);
    std::vector<double> y(n), x(n);
    for (int i = 0; i < n; ++i) {
        double sum = b[i];
        for (int k = 0; k < i; ++k) sum -= l(i, k) * y[k];
        y[i] = sum / l(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double sum = y[i];
        for (int k = i + 1; k < n; ++k) sum -= l(k, i) * x[k];
        x[i] = sum / l(i, i);
    }
    return x;
}

RealMatrix spd_inverse(const RealMatrix& s) {
    int n = s.rows();
    RealMatrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        std::vector<double> col = spd_solve(s, e);
        e[j] = 0.0;
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    // symmetrize to kill round-off asymmetry
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = inv(j, i) = v;
        }
    return inv;
}

ComplexMatrix complex_inverse(const ComplexMatrix& a, double* cond_est) {
    int n = a.rows();
    ComplexMatrix lu = a;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(lu(i, j)));
    if (scale == 0.0) throw SingularTransform("zero matrix");

    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
        if (std::abs(lu(p, k)) < 1e-14 * scale)
            throw SingularTransform("matrix numerically singular");
        if (p != k) {
            std::swap(perm[p], perm[k]);
            for (int j = 0; j < n; ++j) std::swap(lu(p, j), lu(k, j));
        }
        for (int i = k + 1; i < n; ++i) {
            lu(i, k) /= lu(k, k);
            for (int j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
        }
    }

    ComplexMatrix inv(n, n);
    std::vector<cplx> col(n);
    for (int c = 0; c < n; ++c) {
        for (int i = 0; i < n; ++i) col[i] = (perm[i] == c) ? 1.0 : 0.0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < i; ++k) col[i] -= lu(i, k) * col[k];
        for (int i = n - 1; i >= 0; --i) {
            for (int k = i + 1; k < n; ++k) col[i] -= lu(i, k) * col[k];
            col[i] /= lu(i, i);
        }
        for (int i = 0; i < n; ++i) inv(i, c) = col[i];
    }

    if (cond_est) {
        double na = 0.0, ni = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                na += std::norm(a(i, j));
                ni += std::norm(inv(i, j));
            }
        *cond_est = std::sqrt(na) * std::sqrt(ni);
    }
    return inv;
}

namespace {

void hessenberg(ComplexMatrix& a) {
    int n = a.rows();
    for (int k = 0; k < n - 2; ++k) {
        // Householder on column k below the subdiagonal.
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == 0.0) continue;
        std::vector<cplx> v(n, 0.0);
        double norm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            norm2 += std::norm(v[i]);
        }
        double alpha = std::sqrt(norm2);
        if (alpha == 0.0) continue;
        cplx phase = (std::abs(v[k + 1]) > 0.0) ? v[k + 1] / std::abs(v[k + 1]) : cplx(1.0);
        v[k + 1] += phase * alpha;
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        // A <- (I - 2 v v* / v*v) A (I - 2 v v* / v*v)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
            s *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (int j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j]);
        }
    }
}

}  // namespace

std::vector<cplx> complex_eigenvalues(const ComplexMatrix& a_in) {
    int n = a_in.rows();
    std::vector<cplx> eig;
    if (n == 0) return eig;
    ComplexMatrix a = a_in;
    hessenberg(a);

    int hi = n - 1;
    int iter_total = 0;
    const int iter_cap = 100 * n;
    while (hi >= 0) {
        // Find deflation point.
        int lo = hi;
        while (lo > 0) {
            double off = std::abs(a(lo, lo - 1));
            double diag = std::abs(a(lo - 1, lo - 1)) + std::abs(a(lo, lo));
            if (off <= 1e-15 * (diag > 0.0 ? diag : 1.0)) {
                a(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig.push_back(a(hi, hi));
            --hi;
            continue;
        }
        if (++iter_total > iter_cap) throw NoConvergence("eigenvalue QR did not converge");

        // Wilkinson shift from trailing 2x2.
        cplx h00 = a(hi - 1, hi - 1), h01 = a(hi - 1, hi);
        cplx h10 = a(hi, hi - 1), h11 = a(hi, hi);
        cplx tr = h00 + h11;
        cplx disc = std::sqrt(tr * tr - 4.0 * (h00 * h11 - h01 * h10));
        cplx mu1 = 0.5 * (tr + disc), mu2 = 0.5 * (tr - disc);
        cplx shift = (std::abs(mu1 - h11) < std::abs(mu2 - h11)) ? mu1 : mu2;
        if (iter_total % 20 == 0) {
            // exceptional shift to break rare cycles
            shift = cplx(std::abs(a(hi, hi - 1)), 0.0) + a(hi, hi);
        }

        // Implicit single-shift QR sweep (Francis bulge chase): each Givens is
        // applied from both sides before the next pair is read, since the
        // chased bulge at (k+2, k) only exists after the column rotation.
        cplx x = a(lo, lo) - shift;
        cplx y = a(lo + 1, lo);
        for (int k = lo; k < hi; ++k) {
            double r = std::sqrt(std::norm(x) + std::norm(y));
            cplx c, s;
            if (r == 0.0) { c = 1.0; s = 0.0; } else { c = x / r; s = y / r; }
            for (int j = std::max(0, k - 1); j < n; ++j) {
                cplx t1 = a(k, j), t2 = a(k + 1, j);
                a(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
                a(k + 1, j) = -s * t1 + c * t2;
            }
            int imax = std::min(hi, k + 2);
            for (int i = 0; i <= imax; ++i) {
                cplx t1 = a(i, k), t2 = a(i, k + 1);
                a(i, k) = t1 * c + t2 * s;
                a(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
            }
            if (k < hi - 1) {
                x = a(k + 1, k);
                y = a(k + 2, k);
            }
        }
    }
    std::sort(eig.begin(), eig.end(),
              [](const cplx& u, const cplx& v) { return std::abs(u) > std::abs(v); });
    return eig;
}

std::vector<double> singular_values(const ComplexMatrix& a_in) {
    // One-sided Jacobi: orthogonalize columns of a working copy.
    ComplexMatrix a = a_in;
    int m = a.rows(), n = a.cols();
    if (m < n) {  // work on the transpose; singular values agree
        ComplexMatrix t(n, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) t(j, i) = a(i, j);
        a = t;
        std::swap(m, n);
    }
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                cplx apq = 0.0;
                double app = 0.0, aqq = 0.0;
                for (int i = 0; i < m; ++i) {
                    apq += std::conj(a(i, p)) * a(i, q);
                    app += std::norm(a(i, p));
                    aqq += std::norm(a(i, q));
                }
                double denom = std::sqrt(app * aqq);
                if (denom <= 0.0) continue;
                double rel = std::abs(apq) / denom;
                off = std::max(off, rel);
                if (rel <= 1e-13) continue;
                // Phase-rotate column q so the coupling becomes real, then
                // apply a real Jacobi rotation.
                cplx phase = apq / std::abs(apq);
                double re = std::abs(apq);
                double tau = (aqq - app) / (2.0 * re);
                double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int i = 0; i < m; ++i) {
                    cplx vp = a(i, p);
                    cplx vq = a(i, q) * std::conj(phase);
                    a(i, p) = c * vp - s * vq;
                    a(i, q) = s * vp + c * vq;
                }
            }
        if (off <= 1e-13) break;
    }
    std::vector<double> sv(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += std::norm(a(i, j));
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

}  // namespace rtheta
