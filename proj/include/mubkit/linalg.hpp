#pragma once

#include <vector>

#include "mubkit/types.hpp"

namespace mubkit {

// ---------------------------------------------------------------------------
// Elementwise / structural operations
// ---------------------------------------------------------------------------

ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix dagger(const ComplexMatrix& a);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex factor);

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product: entry ((i*b.rows+k),(j*b.cols+l)) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// a * v for a column vector v.
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v);
/// a^H * v: inner products of a's columns with v.
ComplexVector matvec_dagger(const ComplexMatrix& a, const ComplexVector& v);

double norm_max(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);

double vector_norm(const ComplexVector& v);
Complex inner_product(const ComplexVector& a, const ComplexVector& b);  // <a|b>, conjugate-linear in a
double vector_distance(const ComplexVector& a, const ComplexVector& b);

/// Extract the submatrix at the given (strictly increasing) row/column index sets.
ComplexMatrix submatrix(const ComplexMatrix& a, const std::vector<std::size_t>& row_idx,
                        const std::vector<std::size_t>& col_idx);

/// Block transpose on the first tensor factor: block (i,j) of the result
/// equals block (j,i) of m, blocks of size d_B x d_B. An involution.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const BipartiteShape& shape);

// ---------------------------------------------------------------------------
// Spectral decompositions (one-sided Jacobi SVD, two-sided Hermitian Jacobi)
// ---------------------------------------------------------------------------

struct SvdResult {
    ComplexMatrix u;                     // rows x k, orthonormal columns for positive singular values
    std::vector<double> singular_values; // length min(rows, cols), descending
    ComplexMatrix v;                     // cols x k, orthonormal columns
};

/// Full singular value decomposition a = u * diag(s) * v^H, computed by
/// one-sided Jacobi column orthogonalisation. Singular values carry high
/// relative accuracy, which keeps rank decisions at tol * sigma_max stable.
SvdResult svd(const ComplexMatrix& a);

/// Descending singular values of a; length min(rows, cols).
std::vector<double> singular_values(const ComplexMatrix& a);

/// Count of singular values above structural_tol * sigma_max; 0 for the zero matrix.
std::size_t numeric_rank(const ComplexMatrix& a, const Tolerances& tol = {});

struct HermitianEigenResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, matching eigenvalue order
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
HermitianEigenResult hermitian_eigen(const ComplexMatrix& h);

}  // namespace mubkit
