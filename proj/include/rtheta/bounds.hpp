#pragma once

namespace rtheta {

struct ErrorBoundParams {
    int genus = 1;
    int order = 0;        // derivative order N
    double rho = 1.0;     // shortest-vector length of sqrt(pi)*T*Z^g
    double tinv_norm = 0.0;
    double eps = 1e-12;   // target absolute error
};

// Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt for half-integer s > 0.
// Closed-form recurrence seeded at Gamma(1,x) = e^{-x}, Gamma(1/2,x) =
// sqrt(pi)*erfc(sqrt(x)).  Throws UnsupportedArgument unless 2s is a
// positive integer.
double incomplete_gamma_upper(double s, double x);

// Truncation-error bound of the uniform approximation at radius R:
//   (2 pi)^N (g/2)(2/rho)^g sum_j binom(N,j) pi^{-j/2} |T^-1|^j sqrt(g)^{N-j}
//     Gamma((g+j)/2, (R - rho/2)^2).
// Throws InvalidRadius if R <= rho/2.
double error_bound(double radius, const ErrorBoundParams& p);

// Smallest admissible summation radius: max of the closed-form floor
// R0 = (1/2) sqrt(g + 2N + sqrt(g^2 + 8N)) + rho/2 and the solution of
// error_bound(R) = eps (bracket doubling from R0, then bisection to 1e-10).
// Throws NoConvergence if the bracket exceeds 1e4.
double solve_radius(const ErrorBoundParams& p);

}  // namespace rtheta
