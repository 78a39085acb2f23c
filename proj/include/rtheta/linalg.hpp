#pragma once

#include <vector>

#include "rtheta/matrix.hpp"

namespace rtheta {

// Operator 2-norm estimate by power iteration on A^T A (fixed 50 iterations,
// deterministic all-ones start vector).
double spectral_norm(const RealMatrix& a);

// Inverse of an upper-triangular matrix by back substitution.
// Throws DegenerateBasis if a diagonal entry vanishes.
RealMatrix upper_triangular_inverse(const RealMatrix& t);

// Solve S x = b for symmetric positive definite S (Cholesky).
std::vector<double> spd_solve(const RealMatrix& s, const std::vector<double>& b);
RealMatrix spd_inverse(const RealMatrix& s);

// Inverse of a general complex matrix by LU with partial pivoting.  If
// cond_est is non-null it receives the Frobenius-norm condition estimate
// |A|_F * |A^-1|_F.  Throws SingularTransform on a vanishing pivot.
ComplexMatrix complex_inverse(const ComplexMatrix& a, double* cond_est = nullptr);

// Eigenvalues of a general complex matrix: Householder reduction to Hessenberg
// form followed by shifted QR with complex Givens rotations.  Returned sorted
// by modulus, largest first.
std::vector<cplx> complex_eigenvalues(const ComplexMatrix& a);

// Singular values of a complex matrix via one-sided Jacobi, descending.
std::vector<double> singular_values(const ComplexMatrix& a);

}  // namespace rtheta
