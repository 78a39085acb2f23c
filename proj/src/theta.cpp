#include "rtheta/theta.hpp"

#include <algorithm>
#include <cmath>

#include "rtheta/bounds.hpp"
#include "rtheta/errors.hpp"
#include "rtheta/linalg.hpp"

namespace rtheta {

Characteristic::Characteristic(std::vector<uint8_t> eps, std::vector<uint8_t> delta)
    : eps_(std::move(eps)), delta_(std::move(delta)) {
    if (eps_.size() != delta_.size())
        throw UnsupportedArgument("characteristic halves differ in length");
    for (uint8_t v : eps_)
        if (v > 1) throw UnsupportedArgument("characteristic entries must be 0 or 1");
    for (uint8_t v : delta_)
        if (v > 1) throw UnsupportedArgument("characteristic entries must be 0 or 1");
}

Characteristic Characteristic::zero(int g) {
    return Characteristic(std::vector<uint8_t>(g, 0), std::vector<uint8_t>(g, 0));
}

int Characteristic::parity_sign() const {
    int dot = 0;
    for (size_t i = 0; i < eps_.size(); ++i) dot += eps_[i] * delta_[i];
    return (dot % 2 == 0) ? 1 : -1;
}

int parity(const Characteristic& m) { return m.parity_sign(); }

DerivativeSpec::DerivativeSpec(const std::vector<std::vector<cplx>>& directions) {
    dirs_.reserve(directions.size());
    for (const auto& k : directions) {
        double norm2 = 0.0;
        for (cplx v : k) norm2 += std::norm(v);
        double norm = std::sqrt(norm2);
        if (!(norm > 0.0)) throw UnsupportedArgument("derivative direction must be nonzero");
        std::vector<cplx> unit(k.size());
        for (size_t i = 0; i < k.size(); ++i) unit[i] = k[i] / norm;
        dirs_.push_back(std::move(unit));
        scale_ *= norm;
    }
}

namespace {

void check_square_symmetric(const ComplexMatrix& tau) {
    int g = tau.rows();
    if (g == 0 || g != tau.cols()) throw UnsupportedArgument("tau must be square");
    double scale = 0.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) scale = std::max(scale, std::abs(tau(i, j)));
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j)
            if (std::abs(tau(i, j) - tau(j, i)) > 1e-10 * std::max(scale, 1.0))
                throw UnsupportedArgument("tau must be symmetric");
}

}  // namespace

RiemannContext build_context(const ComplexMatrix& tau, double eps_target, int nderivs,
                             bool use_siegel, long long ellipsoid_cap) {
    check_square_symmetric(tau);
    if (!(eps_target > 0.0 && eps_target < 1.0))
        throw UnsupportedArgument("eps_target must lie in (0, 1)");
    if (nderivs < 0) throw UnsupportedArgument("nderivs must be >= 0");

    RiemannContext ctx;
    ctx.tau_original = tau;
    int g = tau.rows();
    if (use_siegel) {
        SiegelReduction red = siegel_reduce(tau);
        ctx.tau_reduced = red.tau;
        ctx.gamma = red.gamma;
        ctx.reduction_stalled = red.stalled;
    } else {
        ctx.tau_reduced = tau;
        for (int i = 0; i < g; ++i)
            for (int j = i + 1; j < g; ++j) {
                cplx v = 0.5 * (ctx.tau_reduced(i, j) + ctx.tau_reduced(j, i));
                ctx.tau_reduced(i, j) = ctx.tau_reduced(j, i) = v;
            }
        ctx.gamma = SymplecticTransform::identity(g);
    }

    ctx.x_part = real_part(ctx.tau_reduced);
    ctx.y_part = imag_part(ctx.tau_reduced);
    ctx.chol = cholesky_upper(ctx.y_part);
    ctx.y_inv = spd_inverse(ctx.y_part);
    ctx.eps_target = eps_target;
    ctx.nderivs = nderivs;

    const double sqrt_pi = std::sqrt(M_PI);
    RealMatrix lattice_gen(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) lattice_gen(i, j) = sqrt_pi * ctx.chol(j, i);
    ctx.rho = shortest_vector(LatticeBasis{lattice_gen}).norm;
    ctx.tinv_norm = spectral_norm(upper_triangular_inverse(ctx.chol));

    ctx.radii.resize(nderivs + 1);
    ctx.caches.resize(nderivs + 1);
    for (int n = 0; n <= nderivs; ++n) {
        ErrorBoundParams p{g, n, ctx.rho, ctx.tinv_norm, eps_target};
        ctx.radii[n] = solve_radius(p);
        ctx.caches[n] = enumerate_deformed_ellipsoid(ctx.chol, ctx.radii[n], 1.0, ellipsoid_cap);
        ctx.caches[n].order = n;
    }
    return ctx;
}

ReducedArgument reduce_argument(const std::vector<cplx>& z, const RiemannContext& ctx) {
    int g = ctx.genus();
    if (static_cast<int>(z.size()) != g)
        throw UnsupportedArgument("argument dimension does not match context genus");

    std::vector<double> re(g), im(g);
    for (int i = 0; i < g; ++i) {
        re[i] = z[i].real();
        im[i] = z[i].imag();
    }
    std::vector<double> b = ctx.y_inv.apply(im);

    ReducedArgument out;
    out.tau_shift.resize(g);
    out.int_shift.resize(g);
    out.a.resize(g);
    out.b.resize(g);
    for (int i = 0; i < g; ++i) {
        double q = std::floor(b[i]);
        out.tau_shift[i] = static_cast<long long>(q);
        out.b[i] = b[i] - q;
    }
    std::vector<double> xb = ctx.x_part.apply(b);
    for (int i = 0; i < g; ++i) {
        double ap = re[i] - xb[i];
        double p = std::floor(ap);
        out.int_shift[i] = static_cast<long long>(p);
        out.a[i] = ap - p;
    }

    out.z0.resize(g);
    for (int i = 0; i < g; ++i) {
        cplx acc = out.a[i];
        for (int j = 0; j < g; ++j) acc += ctx.tau_reduced(i, j) * out.b[j];
        out.z0[i] = acc;
    }

    // w = -q.z0 - (1/2) q^t tau q  (zero-characteristic prefactor exponent)
    cplx w = 0.0;
    for (int i = 0; i < g; ++i) {
        double qi = static_cast<double>(out.tau_shift[i]);
        if (qi == 0.0) continue;
        w -= qi * out.z0[i];
        for (int j = 0; j < g; ++j)
            w -= 0.5 * qi * ctx.tau_reduced(i, j) * static_cast<double>(out.tau_shift[j]);
    }
    out.exponent = w;
    return out;
}

namespace {

cplx pairwise_sum(const cplx* data, size_t n) {
    if (n <= 8) {
        cplx s = 0.0;
        for (size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

cplx i_power(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

cplx ThetaParts::combined() const { return mantissa * std::exp(exponent); }

ThetaParts theta_split(const std::vector<cplx>& z, const RiemannContext& ctx,
                       const Characteristic& m, const DerivativeSpec& derivs) {
    int g = ctx.genus();
    int N = derivs.order();
    if (m.genus() != g) throw UnsupportedArgument("characteristic genus mismatch");
    if (N > ctx.nderivs) throw DerivOrderExceeded();
    for (const auto& k : derivs.directions())
        if (static_cast<int>(k.size()) != g)
            throw UnsupportedArgument("derivative direction dimension mismatch");

    ReducedArgument red = reduce_argument(z, ctx);

    // Round b to integers (ties to even) for the eta split.
    std::vector<double> b_round(g), b_frac(g);
    for (int i = 0; i < g; ++i) {
        b_round[i] = round_half_even(red.b[i]);
        b_frac[i] = red.b[i] - b_round[i];
    }

    const EllipsoidCache& cache = ctx.caches[N];
    size_t npts = cache.count();
    std::vector<cplx> terms(npts);

    std::vector<double> u(g), shifted(g), tvec(g);
    const std::vector<uint8_t>& eps = m.eps();
    const std::vector<uint8_t>& dl = m.delta();
    for (size_t pt = 0; pt < npts; ++pt) {
        const long long* n = cache.points.data() + pt * g;
        for (int i = 0; i < g; ++i) {
            double ni = static_cast<double>(n[i]);
            u[i] = ni - b_round[i] + 0.5 * eps[i];          // n - eta
            shifted[i] = ni + 0.5 * eps[i] + b_frac[i];     // arg of v(.)
        }
        // Gaussian decay: pi * |T shifted|^2
        double gauss = 0.0;
        for (int i = 0; i < g; ++i) {
            double s = 0.0;
            for (int j = i; j < g; ++j) s += ctx.chol(i, j) * shifted[j];
            gauss += s * s;
        }
        gauss *= M_PI;
        // Oscillatory phase: (1/2) u^t X u + u . (Re z0 + delta/2)
        double phase = 0.0;
        for (int i = 0; i < g; ++i) {
            double s = 0.0;
            for (int j = 0; j < g; ++j) s += ctx.x_part(i, j) * u[j];
            phase += 0.5 * u[i] * s;
            phase += u[i] * (red.z0[i].real() + 0.5 * dl[i]);
        }
        cplx term = std::exp(cplx(-gauss, 2.0 * M_PI * phase));
        // Derivative factors k . (u - q), with q folded in exactly.
        for (const auto& k : derivs.directions()) {
            cplx dot = 0.0;
            for (int i = 0; i < g; ++i)
                dot += k[i] * (u[i] - static_cast<double>(red.tau_shift[i]));
            term *= dot;
        }
        terms[pt] = term;
    }

    cplx sum = pairwise_sum(terms.data(), terms.size());
    sum *= std::pow(2.0 * M_PI, N) * i_power(N);
    sum *= derivs.scale();

    // Characteristic-dependent sign of the quasi-periodicity prefactor.
    long long sgn = 0;
    for (int i = 0; i < g; ++i) {
        sgn += static_cast<long long>(eps[i]) * red.int_shift[i];
        sgn += static_cast<long long>(dl[i]) * red.tau_shift[i];
    }
    if (((sgn % 2) + 2) % 2 == 1) sum = -sum;

    // Growth factor pi y^t Y^{-1} y = pi b^t Y b at the reduced argument.
    double growth = 0.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) growth += red.b[i] * ctx.y_part(i, j) * red.b[j];
    growth *= M_PI;

    ThetaParts parts;
    parts.mantissa = sum;
    parts.exponent = cplx(growth, 0.0) + cplx(0.0, 2.0 * M_PI) * red.exponent;
    return parts;
}

cplx theta(const std::vector<cplx>& z, const RiemannContext& ctx,
           const Characteristic& m, const DerivativeSpec& derivs) {
    return theta_split(z, ctx, m, derivs).combined();
}

cplx theta(const std::vector<cplx>& z, const RiemannContext& ctx, const Characteristic& m) {
    return theta(z, ctx, m, DerivativeSpec{});
}

cplx theta(const std::vector<cplx>& z, const RiemannContext& ctx) {
    return theta(z, ctx, Characteristic::zero(ctx.genus()), DerivativeSpec{});
}

cplx theta_naive(const std::vector<cplx>& z, const ComplexMatrix& tau,
                 const Characteristic& m, const DerivativeSpec& derivs, int box_radius) {
    int g = tau.rows();
    if (static_cast<int>(z.size()) != g) throw UnsupportedArgument("argument dimension mismatch");
    if (m.genus() != g) throw UnsupportedArgument("characteristic genus mismatch");
    int N = derivs.order();

    std::vector<double> nvec(g);
    std::vector<cplx> terms;
    long long side = 2LL * box_radius + 1;
    long long total = 1;
    for (int i = 0; i < g; ++i) total *= side;
    terms.reserve(static_cast<size_t>(total));

    std::vector<long long> idx(g, -box_radius);
    const std::vector<uint8_t>& eps = m.eps();
    const std::vector<uint8_t>& dl = m.delta();
    while (true) {
        for (int i = 0; i < g; ++i) nvec[i] = static_cast<double>(idx[i]) + 0.5 * eps[i];
        cplx arg = 0.0;
        for (int i = 0; i < g; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < g; ++j) s += tau(i, j) * nvec[j];
            arg += 0.5 * nvec[i] * s;
            arg += nvec[i] * (z[i] + 0.5 * dl[i]);
        }
        cplx term = std::exp(cplx(0.0, 2.0 * M_PI) * arg);
        for (const auto& k : derivs.directions()) {
            cplx dot = 0.0;
            for (int i = 0; i < g; ++i) dot += k[i] * nvec[i];
            term *= dot;
        }
        terms.push_back(term);

        int level = g - 1;
        while (level >= 0 && idx[level] == box_radius) {
            idx[level] = -box_radius;
            --level;
        }
        if (level < 0) break;
        ++idx[level];
    }

    cplx sum = pairwise_sum(terms.data(), terms.size());
    sum *= std::pow(2.0 * M_PI, N) * i_power(N);
    sum *= derivs.scale();
    return sum;
}

}  // namespace rtheta
