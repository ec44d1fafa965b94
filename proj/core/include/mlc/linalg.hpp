#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "mlc/dense_matrix.hpp"

namespace mlc {

/// PA = LU with partial pivoting, packed into one matrix.
struct LUDecomposition {
  DenseMatrix lu;
  std::vector<std::size_t> perm;
};

/// Throws SingularMatrixError when a pivot vanishes relative to the matrix norm.
LUDecomposition lu_factor(const DenseMatrix& a);
DenseMatrix lu_solve(const LUDecomposition& f, const DenseMatrix& b);
Vector lu_solve(const LUDecomposition& f, std::span<const double> b);

DenseMatrix solve(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix inverse(const DenseMatrix& a);

struct SymmetricEigen {
  Vector values;        ///< ascending
  DenseMatrix vectors;  ///< column j pairs with values[j]
};

/// Householder tridiagonalization followed by implicit-shift QL.
/// Throws DomainError for non-symmetric input and ConvergenceError if an
/// eigenvalue needs more than 60 sweeps.
SymmetricEigen sym_eig(const DenseMatrix& a);
Vector sym_eigvals(const DenseMatrix& a);

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal `d`
/// and off-diagonal `e` (e.size() == d.size() - 1).
SymmetricEigen tridiag_eig(const Vector& d, const Vector& e, bool want_vectors = true);

/// All eigenvalues of a general real matrix (balancing, Hessenberg reduction,
/// Francis double-shift QR). Order is unspecified.
std::vector<std::complex<double>> eigenvalues(const DenseMatrix& a);

}  // namespace mlc
