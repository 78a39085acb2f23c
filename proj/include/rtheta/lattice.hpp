#pragma once

#include <vector>

#include "rtheta/matrix.hpp"

namespace rtheta {

// Rows of `gen` are the basis vectors.
struct LatticeBasis {
    RealMatrix gen;
    int dim() const { return gen.rows(); }
};

struct UnimodularTransform {
    IntMatrix mat;  // det = +-1, checked where produced
};

struct ReducedBasis {
    LatticeBasis basis;
    UnimodularTransform transform;  // basis.gen = transform * input
};

struct ShortestVectorResult {
    std::vector<long long> coeffs;  // w.r.t. the input basis
    double norm;
};

// Integer points of a deformed ellipsoid, flattened (dim entries per point),
// sorted lexicographically.  `order` is filled in by the evaluation layer.
struct EllipsoidCache {
    int dim = 0;
    int order = 0;
    double radius = 0.0;
    std::vector<long long> points;
    size_t count() const { return dim ? points.size() / dim : 0; }
};

// Upper-triangular T with positive diagonal and T^t T = Y.
// Throws NotPositiveDefinite if a pivot is <= 0.
RealMatrix cholesky_upper(const RealMatrix& y);

// LLL reduction of the rows of `b`.  Returns the reduced basis and the exact
// integer transform U with reduced = U * b.
// Throws DegenerateBasis if a Gram-Schmidt norm underflows below 1e-300.
ReducedBasis lll_reduce(const LatticeBasis& b, double delta = 0.99);

// Exact shortest nonzero lattice vector (Schnorr-Euchner enumeration after
// LLL preprocessing).  Ties broken canonically: sign fixed so the first
// nonzero coefficient is positive, then lexicographically smallest.
ShortestVectorResult shortest_vector(const LatticeBasis& b);

// Hermite-Korkine-Zolotarev reduction: k-th output vector is shortest in the
// lattice projected orthogonally to the first k-1 vectors, basis size-reduced.
ReducedBasis hkz_reduce(const LatticeBasis& b);

// All integer n with min_{|c_j| <= offset_bound} pi*(n-c)^t T^t T (n-c) < R^2.
// T must be upper-triangular with positive diagonal.  Candidates come from a
// conservative enlargement pass, then each is filtered by exact box-constrained
// minimization (coordinate descent on the convex quadratic).
// Throws EllipsoidTooLarge if the candidate count exceeds `cap`.
EllipsoidCache enumerate_deformed_ellipsoid(const RealMatrix& t, double radius,
                                            double offset_bound = 1.0,
                                            long long cap = 10000000);

}  // namespace rtheta
