#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rtheta/matrix.hpp"
#include "rtheta/theta.hpp"

namespace rtheta {

struct RankResult {
    int rank = 0;
    std::vector<double> singular_values;  // descending
};

struct NullSearch {
    bool found = false;
    Characteristic minimizer;  // even m with smallest |theta[m](0)|
    cplx min_value;
    double max_abs = 0.0;  // largest |theta[m](0)| over even m
    double tol_used = 0.0;
    std::vector<Characteristic> below_tol;  // all even m under tol
};

struct ThetaNullReport {
    Characteristic characteristic;
    cplx theta_value;
    ComplexMatrix hessian;
    std::vector<double> singular_values;
    int rank = 0;
    std::vector<cplx> eigenvalues;  // secondary diagnostic, modulus-sorted
};

// theta[m](0, tau) for every even characteristic; 2^{g-1}(2^g + 1) entries.
std::map<Characteristic, cplx> even_theta_constants(const RiemannContext& ctx);

// Scan the even theta constants for a vanishing one.  Negative tol selects
// the default 1e-6 * max |theta[m](0)|.  Comparison is strict, so tol = 0
// never reports a null.
NullSearch find_theta_null(const RiemannContext& ctx, double tol = -1.0);

// Hessian H_jk = d^2 theta[m] / dz_j dz_k at z = 0, symmetrized.
// Requires a context built with nderivs >= 2.
ComplexMatrix hessian_at_null(const RiemannContext& ctx, const Characteristic& m);

// Rank = number of singular values above rel_tol * sigma_max (with an
// absolute floor of 1e-300 on sigma_max, so the zero matrix has rank 0).
RankResult numerical_rank(const ComplexMatrix& m, double rel_tol = 1e-8);

// Full diagnostic: Siegel-reduce, scan the even constants, and if a null is
// found report the Hessian with its singular values, rank and eigenvalues.
std::optional<ThetaNullReport> schottky_null(const ComplexMatrix& tau,
                                             double eps_target = 1e-12, double tol = -1.0,
                                             long long ellipsoid_cap = 10000000);

}  // namespace rtheta
