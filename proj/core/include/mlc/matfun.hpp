#pragma once

// Matrix functions of adjacency matrices: spectral radius, E_{alpha,beta}(gamma A)
// by eigendecomposition or power series, its action on a vector by Lanczos,
// and the exponential / principal logarithm used by the temporal model.

#include <cstddef>
#include <span>

#include "mlc/dense_matrix.hpp"
#include "mlc/linalg.hpp"
#include "mlc/mlkernel.hpp"
#include "mlc/sparse.hpp"

namespace mlc {

/// Default relative tolerance for matrix-level ML evaluations.
inline constexpr double kDefaultMatrixTol = 1e-13;

/// Largest eigenvalue of a nonnegative matrix by power iteration on A + I,
/// stopping once ||Ax - theta x|| <= tol * theta. Throws DomainError for the
/// zero matrix and ConvergenceError after `max_iter` iterations.
double spectral_radius(const CsrMatrix& a, double tol = 1e-10, std::size_t max_iter = 20000);

/// Dense variant: symmetric input via sym_eig, otherwise max |lambda| from the
/// general eigenvalue solver. Zero matrices return 0.
double spectral_radius(const DenseMatrix& a);

/// Orthonormal Lanczos basis of K_m(A, v) and the tridiagonal projection
/// T = V^T A V (diagonal `alpha`, off-diagonal `beta`).
struct KrylovBasis {
  std::size_t m = 0;
  DenseMatrix V;  ///< n x m, columns are basis vectors
  Vector alpha;
  Vector beta;          ///< length m - 1
  double next_beta = 0;  ///< coupling to the (m+1)-th vector
  bool breakdown = false;

  DenseMatrix T() const;
};

/// m steps of Lanczos with full reorthogonalization; stops early on breakdown.
KrylovBasis lanczos(const CsrMatrix& a, std::span<const double> v, std::size_t m);

/// `k` largest eigenvalues (descending) of symmetric A by Lanczos with a fixed
/// pseudo-random start vector; converged when every Ritz residual is below
/// tol * |theta|.
Vector lanczos_largest(const CsrMatrix& a, std::size_t k, double tol = 1e-10, std::size_t m_max = 1000);

/// Q f(gamma Lambda) Q^T for symmetric A. Throws OverflowError when any
/// f(gamma lambda_i) or product entry is non-finite.
DenseMatrix ml_matrix_eig(const DenseMatrix& a, const MLParams& p, double tol = kDefaultMatrixTol);

/// Truncated power series sum_r gamma^r A^r / Gamma(alpha r + beta) with the
/// remainder bounded in the 1-norm by tol * ||partial sum||. Throws
/// ConvergenceError when rounding in the partial sums could exceed 1e-8
/// relative, which happens for mixed-sign A with large |gamma lambda|.
DenseMatrix ml_matrix_series(const DenseMatrix& a, const MLParams& p, double tol = kDefaultMatrixTol);

/// E_{alpha,beta}(gamma A). Symmetric input uses the eigendecomposition; for
/// other input alpha = 0 uses the resolvent, alpha = beta = 1 matrix_exp and
/// everything else the series.
DenseMatrix ml_matrix_dense(const DenseMatrix& a, const MLParams& p, double tol = kDefaultMatrixTol);

/// Cached eigendecomposition of a symmetric matrix for repeated
/// evaluation at many (alpha, gamma).
class SymmetricSpectrum {
 public:
  explicit SymmetricSpectrum(const DenseMatrix& a);

  const Vector& values() const { return eig_.values; }
  const DenseMatrix& vectors() const { return eig_.vectors; }
  std::size_t n() const { return eig_.values.size(); }
  double rho() const;

  /// f(gamma lambda_i); +inf where E overflows.
  Vector ml_values(const MLParams& p, double tol = kDefaultMatrixTol) const;
  /// diag Q f Q^T, possibly non-finite.
  Vector diagonal(const Vector& f) const;
  /// Q f Q^T x, possibly non-finite.
  Vector apply(const Vector& f, std::span<const double> x) const;
  /// Q f Q^T
  DenseMatrix matrix(const Vector& f) const;

 private:
  SymmetricEigen eig_;
};

struct KrylovInfo {
  std::size_t m = 0;
  bool breakdown = false;
  double last_change = 0.0;  ///< relative change of the final step
};

/// E_{alpha,beta}(gamma A) v ~= ||v|| V_m E(gamma T_m) e_1, growing m until
/// successive iterates differ by at most tol * ||result||. Lanczos breakdown
/// returns the exact answer. Throws ConvergenceError at m_max and OverflowError
/// when the result is not representable.
Vector ml_action_krylov(const CsrMatrix& a, std::span<const double> v, const MLParams& p, std::size_t m_max,
                        double tol = 1e-10, KrylovInfo* info = nullptr);

/// Pade-13 scaling and squaring. Throws OverflowError for non-finite results.
DenseMatrix matrix_exp(const DenseMatrix& a);

/// Principal logarithm. Symmetric positive definite input goes through
/// sym_eig; everything else through inverse scaling and squaring with
/// Denman-Beavers square roots. Throws BranchError when M has an eigenvalue on
/// the closed negative real axis or exp(L) fails to reproduce M.
DenseMatrix matrix_log_principal(const DenseMatrix& m);

}  // namespace mlc
