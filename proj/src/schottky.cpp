#include "rtheta/schottky.hpp"

#include <algorithm>
#include <cmath>

#include "rtheta/errors.hpp"
#include "rtheta/linalg.hpp"

namespace rtheta {

std::map<Characteristic, cplx> even_theta_constants(const RiemannContext& ctx) {
    int g = ctx.genus();
    std::vector<cplx> origin(g, 0.0);
    std::map<Characteristic, cplx> out;
    std::vector<uint8_t> eps(g), delta(g);
    for (uint64_t bits = 0; bits < (uint64_t{1} << (2 * g)); ++bits) {
        for (int i = 0; i < g; ++i) {
            eps[i] = static_cast<uint8_t>((bits >> i) & 1);
            delta[i] = static_cast<uint8_t>((bits >> (g + i)) & 1);
        }
        Characteristic m(eps, delta);
        if (!m.is_even()) continue;
        out.emplace(m, theta(origin, ctx, m));
    }
    return out;
}

NullSearch find_theta_null(const RiemannContext& ctx, double tol) {
    auto constants = even_theta_constants(ctx);
    NullSearch res;
    double min_abs = 0.0;
    bool first = true;
    for (const auto& [m, v] : constants) {
        double a = std::abs(v);
        res.max_abs = std::max(res.max_abs, a);
        if (first || a < min_abs) {
            min_abs = a;
            res.minimizer = m;
            res.min_value = v;
            first = false;
        }
    }
    res.tol_used = (tol < 0.0) ? 1e-6 * res.max_abs : tol;
    for (const auto& [m, v] : constants)
        if (std::abs(v) < res.tol_used) res.below_tol.push_back(m);
    res.found = min_abs < res.tol_used;
    return res;
}

ComplexMatrix hessian_at_null(const RiemannContext& ctx, const Characteristic& m) {
    int g = ctx.genus();
    if (ctx.nderivs < 2) throw DerivOrderExceeded();
    std::vector<cplx> origin(g, 0.0);
    ComplexMatrix h(g, g);
    for (int j = 0; j < g; ++j)
        for (int k = j; k < g; ++k) {
            std::vector<cplx> ej(g, 0.0), ek(g, 0.0);
            ej[j] = 1.0;
            ek[k] = 1.0;
            cplx v = theta(origin, ctx, m, DerivativeSpec({ej, ek}));
            h(j, k) = v;
            h(k, j) = v;
        }
    return h;
}

RankResult numerical_rank(const ComplexMatrix& m, double rel_tol) {
    RankResult res;
    res.singular_values = singular_values(m);
    double smax = res.singular_values.empty() ? 0.0 : res.singular_values.front();
    smax = std::max(smax, 1e-300);
    for (double s : res.singular_values)
        if (s > rel_tol * smax) ++res.rank;
    return res;
}

std::optional<ThetaNullReport> schottky_null(const ComplexMatrix& tau, double eps_target,
                                             double tol, long long ellipsoid_cap) {
    RiemannContext ctx = build_context(tau, eps_target, 2, true, ellipsoid_cap);
    NullSearch search = find_theta_null(ctx, tol);
    if (!search.found) return std::nullopt;

    ThetaNullReport report;
    report.characteristic = search.minimizer;
    report.theta_value = search.min_value;
    report.hessian = hessian_at_null(ctx, search.minimizer);
    RankResult rank = numerical_rank(report.hessian);
    report.singular_values = rank.singular_values;
    report.rank = rank.rank;
    report.eigenvalues = complex_eigenvalues(report.hessian);
    return report;
}

}  // namespace rtheta
