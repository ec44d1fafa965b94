#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "mlc/error.hpp"
#include "mlc/matfun.hpp"

namespace mlc {
namespace {

// Lanczos recurrence with two-pass classical Gram-Schmidt against every
// stored basis vector.
class LanczosProcess {
 public:
  LanczosProcess(const CsrMatrix& a, std::span<const double> v) : a_(a), w_(a.n()) {
    const double nrm = norm_2(v);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw DomainError("lanczos: start vector must be finite and nonzero");
    Vector q(v.begin(), v.end());
    for (double& x : q) x /= nrm;
    basis_.push_back(std::move(q));
  }

  std::size_t size() const { return alpha_.size(); }
  const Vector& alpha() const { return alpha_; }
  const Vector& beta() const { return beta_; }
  const std::vector<Vector>& basis() const { return basis_; }
  double next_beta() const { return next_beta_; }
  bool breakdown() const { return breakdown_; }

  // Extends the projection by one column. Returns false once the Krylov space
  // is invariant.
  bool step() {
    if (breakdown_) return false;
    const std::size_t n = a_.n();
    const Vector& q = basis_.back();
    a_.multiply(q, w_);
    const double al = dot(q, w_);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& b : basis_) {
        const double c = dot(b, w_);
        axpy(-c, b, w_);
      }
    }
    alpha_.push_back(al);
    if (alpha_.size() > 1) beta_.push_back(prev_beta_);
    scale_ = std::max({scale_, std::abs(al), next_beta_});
    const double be = norm_2(w_);
    next_beta_ = be;
    if (be <= 1e-12 * scale_ || basis_.size() == n) {
      breakdown_ = true;
      next_beta_ = 0.0;
      return true;
    }
    prev_beta_ = be;
    Vector next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = w_[i] / be;
    basis_.push_back(std::move(next));
    return true;
  }

  // Off-diagonal of T restricted to the first size() vectors.
  const Vector& t_offdiag() const { return beta_; }

 private:
  const CsrMatrix& a_;
  Vector w_;
  std::vector<Vector> basis_;
  Vector alpha_;
  Vector beta_;
  double prev_beta_ = 0.0;
  double next_beta_ = 0.0;
  double scale_ = std::numeric_limits<double>::min();
  bool breakdown_ = false;
};

}  // namespace

DenseMatrix KrylovBasis::T() const {
  DenseMatrix t(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    t(i, i) = alpha[i];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
  }
  return t;
}

KrylovBasis lanczos(const CsrMatrix& a, std::span<const double> v, std::size_t m) {
  if (v.size() != a.n()) throw DomainError("lanczos: vector length does not match matrix");
  if (m == 0 || m > a.n()) throw DomainError("lanczos: need 1 <= m <= n");
  LanczosProcess proc(a, v);
  while (proc.size() < m && proc.step()) {
    if (proc.breakdown()) break;
  }
  KrylovBasis out;
  out.m = proc.size();
  out.alpha = proc.alpha();
  out.beta = proc.t_offdiag();
  out.breakdown = proc.breakdown();
  out.next_beta = proc.next_beta();
  out.V = DenseMatrix(a.n(), out.m);
  for (std::size_t j = 0; j < out.m; ++j)
    for (std::size_t i = 0; i < a.n(); ++i) out.V(i, j) = proc.basis()[j][i];
  return out;
}

Vector lanczos_largest(const CsrMatrix& a, std::size_t k, double tol, std::size_t m_max) {
  const std::size_t n = a.n();
  if (k == 0 || k > n) throw DomainError("lanczos_largest: need 1 <= k <= n");
  m_max = std::min(m_max, n);
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector v(n);
  for (double& x : v) x = unif(rng);

  LanczosProcess proc(a, v);
  while (proc.step()) {
    const std::size_t m = proc.size();
    const bool check = proc.breakdown() || m == m_max || (m >= k && m % 5 == 0);
    if (!check) continue;
    const SymmetricEigen e = tridiag_eig(proc.alpha(), proc.t_offdiag(), true);
    if (m < k && proc.breakdown()) {
      throw ConvergenceError("lanczos_largest: invariant subspace smaller than k (repeated eigenvalues?)");
    }
    bool done = proc.breakdown();
    if (!done && m >= k) {
      done = true;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t col = m - 1 - i;
        const double theta = e.values[col];
        const double resid = std::abs(proc.next_beta() * e.vectors(m - 1, col));
        if (resid > tol * std::max(std::abs(theta), 1e-300)) {
          done = false;
          break;
        }
      }
    }
    if (done) {
      Vector out(k);
      for (std::size_t i = 0; i < k; ++i) out[i] = e.values[m - 1 - i];
      return out;
    }
    if (m >= m_max) break;
  }
  throw ConvergenceError("lanczos_largest: Ritz values not converged after " + std::to_string(m_max) + " steps");
}

Vector ml_action_krylov(const CsrMatrix& a, std::span<const double> v, const MLParams& p, std::size_t m_max,
                        double tol, KrylovInfo* info) {
  p.validate();
  const std::size_t n = a.n();
  if (v.size() != n) throw DomainError("ml_action_krylov: vector length does not match matrix");
  if (m_max == 0 || m_max > n) throw DomainError("ml_action_krylov: need 1 <= m_max <= n");
  if (!(tol > 0.0)) throw DomainError("ml_action_krylov: tol must be > 0");
  const double vnorm = norm_2(v);
  if (!(vnorm > 0.0)) throw DomainError("ml_action_krylov: v must be nonzero");

  LanczosProcess proc(a, v);
  Vector prev;
  Vector coeff;
  double change = std::numeric_limits<double>::infinity();
  bool converged = false;

  while (proc.step()) {
    const std::size_t m = proc.size();
    const SymmetricEigen e = tridiag_eig(proc.alpha(), proc.t_offdiag(), true);
    // c = Q f(gamma Theta) Q^T e_1
    Vector w(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double z = p.gamma * e.values[k];
      if (p.alpha == 0.0 && !(std::abs(z) < 1.0)) {
        throw DomainError("resolvent requires gamma * rho < 1 (alpha = 0, gamma = " + std::to_string(p.gamma) + ")");
      }
      double f = 0.0;
      try {
        f = ml_scalar(z, p.alpha, p.beta, std::min(tol * 1e-3, kDefaultScalarTol));
      } catch (const OverflowError&) {
        f = std::numeric_limits<double>::infinity();
      }
      w[k] = f * e.vectors(0, k);
    }
    coeff = e.vectors * w;
    for (double c : coeff) {
      if (!std::isfinite(c)) {
        throw OverflowError("ml_action_krylov: E(gamma T) not representable (alpha = " + std::to_string(p.alpha) +
                            ", gamma = " + std::to_string(p.gamma) + ")");
      }
    }
    if (!prev.empty()) {
      // norm_2 rescales; squaring coefficients near 1e300 directly overflows
      Vector diff(coeff);
      for (std::size_t k = 0; k < prev.size(); ++k) diff[k] -= prev[k];
      change = norm_2(diff) / norm_2(coeff);
    }
    if (proc.breakdown() || change <= tol) {
      converged = true;
      break;
    }
    if (m >= m_max) break;
    prev = coeff;
  }
  if (!converged) {
    throw ConvergenceError("ml_action_krylov: no convergence within m_max = " + std::to_string(m_max) +
                           " (relative change " + std::to_string(change) + ")");
  }

  const std::size_t m = coeff.size();
  Vector y(n, 0.0);
  // Scale by ||v|| last; near the representability edge vnorm * coeff[j] alone can overflow.
  for (std::size_t j = 0; j < m; ++j) axpy(coeff[j], proc.basis()[j], y);
  for (double& yi : y) {
    yi *= vnorm;
    if (!std::isfinite(yi)) {
      throw OverflowError("ml_action_krylov: E(gamma A) v not representable (alpha = " + std::to_string(p.alpha) +
                          ", gamma = " + std::to_string(p.gamma) + ")");
    }
  }
  if (info) {
    info->m = m;
    info->breakdown = proc.breakdown();
    info->last_change = proc.breakdown() ? 0.0 : change;
  }
  return y;
}

}  // namespace mlc
