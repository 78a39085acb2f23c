#include "rtheta/bounds.hpp"

#include <cmath>

#include "rtheta/errors.hpp"

namespace rtheta {

double incomplete_gamma_upper(double s, double x) {
    double two_s = 2.0 * s;
    long long k = std::llround(two_s);
    if (k <= 0 || std::abs(two_s - static_cast<double>(k)) > 1e-9)
        throw UnsupportedArgument("incomplete_gamma_upper: 2s must be a positive integer");
    if (x < 0.0) throw UnsupportedArgument("incomplete_gamma_upper: x must be >= 0");

    double value;
    double cur;  // s value the recurrence has reached
    if (k % 2 == 0) {
        value = std::exp(-x);  // Gamma(1, x)
        cur = 1.0;
    } else {
        value = std::sqrt(M_PI) * std::erfc(std::sqrt(x));  // Gamma(1/2, x)
        cur = 0.5;
    }
    while (cur + 0.5 < s) {
        // Gamma(cur+1, x) = cur*Gamma(cur, x) + x^cur e^{-x}
        double tail = (x > 0.0) ? std::exp(cur * std::log(x) - x) : (cur == 0.0 ? 1.0 : 0.0);
        value = cur * value + tail;
        cur += 1.0;
    }
    return value;
}

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

double error_bound(double radius, const ErrorBoundParams& p) {
    if (!(radius > p.rho / 2.0)) throw InvalidRadius("error_bound: R must exceed rho/2");
    int g = p.genus, N = p.order;
    double arg = (radius - p.rho / 2.0) * (radius - p.rho / 2.0);
    double sum = 0.0;
    for (int j = 0; j <= N; ++j) {
        double term = binomial(N, j);
        term *= std::pow(M_PI, -0.5 * j);
        term *= std::pow(p.tinv_norm, j);
        term *= std::pow(std::sqrt(static_cast<double>(g)), N - j);
        term *= incomplete_gamma_upper(0.5 * (g + j), arg);
        sum += term;
    }
    double pref = std::pow(2.0 * M_PI, N) * (g / 2.0) * std::pow(2.0 / p.rho, g);
    return pref * sum;
}

double solve_radius(const ErrorBoundParams& p) {
    int g = p.genus, N = p.order;
    double r0 = 0.5 * std::sqrt(g + 2.0 * N + std::sqrt(static_cast<double>(g) * g + 8.0 * N)) +
                p.rho / 2.0;
    if (error_bound(r0, p) <= p.eps) return r0;

    double lo = r0, hi = r0;
    double step = 1.0;
    while (error_bound(hi, p) > p.eps) {
        lo = hi;
        hi += step;
        step *= 2.0;
        if (hi > 1e4) throw NoConvergence("solve_radius: no bracket below R = 1e4");
    }
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        if (error_bound(mid, p) > p.eps)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace rtheta
