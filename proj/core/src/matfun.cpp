#include "mlc/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "mlc/error.hpp"

namespace mlc {
namespace {

constexpr std::size_t kSeriesTermCap = 200000;
constexpr double kSeriesCancellationLimit = 1e-8;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string describe(const MLParams& p) {
  return "alpha = " + std::to_string(p.alpha) + ", gamma = " + std::to_string(p.gamma);
}

bool symmetric_enough(const DenseMatrix& a) { return a.is_symmetric(1e-14 * std::max(max_abs(a), 1e-300)); }

DenseMatrix expect_finite(DenseMatrix m, const char* who, const MLParams& p) {
  if (!m.all_finite()) throw OverflowError(std::string(who) + ": result not representable (" + describe(p) + ")");
  return m;
}

}  // namespace

double spectral_radius(const CsrMatrix& a, double tol, std::size_t max_iter) {
  const std::size_t n = a.n();
  if (n == 0) throw DomainError("spectral_radius: empty matrix");
  for (double v : a.values()) {
    if (v < 0.0) throw DomainError("spectral_radius: matrix has negative entries");
  }
  if (std::all_of(a.values().begin(), a.values().end(), [](double v) { return v == 0.0; })) {
    throw DomainError("spectral_radius: zero matrix");
  }
  // Power iteration on A + I: the Perron root is the unique dominant
  // eigenvalue of the shifted matrix even for bipartite graphs.
  Vector x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Vector ax(n);
  for (std::size_t it = 0; it < max_iter; ++it) {
    a.multiply(x, ax);
    const double theta = dot(x, ax);
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ax[i] - theta * x[i];
      res2 += r * r;
    }
    if (theta > 0.0 && std::sqrt(res2) <= tol * theta) return theta;
    for (std::size_t i = 0; i < n; ++i) ax[i] += x[i];
    const double nrm = norm_2(ax);
    for (std::size_t i = 0; i < n; ++i) x[i] = ax[i] / nrm;
  }
  throw ConvergenceError("spectral_radius: power iteration did not converge in " + std::to_string(max_iter) +
                         " iterations (small spectral gap?)");
}

double spectral_radius(const DenseMatrix& a) {
  if (!a.square()) throw DomainError("spectral_radius: matrix is not square");
  if (a.rows() == 0) throw DomainError("spectral_radius: empty matrix");
  if (max_abs(a) == 0.0) return 0.0;
  double rho = 0.0;
  if (symmetric_enough(a)) {
    for (double l : sym_eigvals(a)) rho = std::max(rho, std::abs(l));
  } else {
    for (auto l : eigenvalues(a)) rho = std::max(rho, std::abs(l));
  }
  return rho;
}

SymmetricSpectrum::SymmetricSpectrum(const DenseMatrix& a) : eig_(sym_eig(a)) {}

double SymmetricSpectrum::rho() const {
  if (eig_.values.empty()) return 0.0;
  return std::max(std::abs(eig_.values.front()), std::abs(eig_.values.back()));
}

Vector SymmetricSpectrum::ml_values(const MLParams& p, double tol) const {
  p.validate();
  Vector f(n());
  for (std::size_t k = 0; k < n(); ++k) {
    const double z = p.gamma * eig_.values[k];
    if (p.alpha == 0.0 && !(std::abs(z) < 1.0)) {
      throw DomainError("resolvent requires gamma * rho < 1 (" + describe(p) + ", gamma * rho = " +
                        std::to_string(p.gamma * rho()) + ")");
    }
    try {
      f[k] = ml_scalar(z, p.alpha, p.beta, tol);
    } catch (const OverflowError&) {
      f[k] = std::numeric_limits<double>::infinity();
    }
  }
  return f;
}

Vector SymmetricSpectrum::diagonal(const Vector& f) const {
  const std::size_t nn = n();
  Vector d(nn, 0.0);
  const DenseMatrix& q = eig_.vectors;
  for (std::size_t i = 0; i < nn; ++i) {
    const double* qi = q.row(i);
    double s = 0.0;
    for (std::size_t k = 0; k < nn; ++k) {
      if (qi[k] == 0.0) continue;
      s += qi[k] * qi[k] * f[k];
    }
    d[i] = s;
  }
  return d;
}

Vector SymmetricSpectrum::apply(const Vector& f, std::span<const double> x) const {
  // f is factored out first so that f_k (Q^T x)_k cannot overflow on its own
  double scale = 0.0;
  for (double v : f) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  Vector c = transpose_times(eig_.vectors, x);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = c[k] == 0.0 ? 0.0 : c[k] * (f[k] / scale);
  Vector y = eig_.vectors * c;
  for (double& v : y) v *= scale;
  return y;
}

DenseMatrix SymmetricSpectrum::matrix(const Vector& f) const {
  const std::size_t nn = n();
  DenseMatrix qf = eig_.vectors;
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t k = 0; k < nn; ++k) qf(i, k) *= f[k];
  DenseMatrix out(nn, nn);
  const DenseMatrix& q = eig_.vectors;
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = i; j < nn; ++j) {
      double s = 0.0;
      const double* a = qf.row(i);
      const double* b = q.row(j);
      for (std::size_t k = 0; k < nn; ++k) s += a[k] * b[k];
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

DenseMatrix ml_matrix_eig(const DenseMatrix& a, const MLParams& p, double tol) {
  p.validate();
  const SymmetricSpectrum spec(a);
  const Vector f = spec.ml_values(p, tol);
  return expect_finite(spec.matrix(f), "ml_matrix_eig", p);
}

DenseMatrix ml_matrix_series(const DenseMatrix& a, const MLParams& p, double tol) {
  p.validate();
  if (!a.square()) throw DomainError("ml_matrix_series: matrix is not square");
  const std::size_t n = a.rows();
  const double anorm = norm_1(a);
  DenseMatrix term = DenseMatrix::identity(n) * rgamma(p.beta);
  DenseMatrix sum = term;
  if (anorm == 0.0) return sum;
  if (p.alpha == 0.0 && !(p.gamma * spectral_radius(a) < 1.0)) {
    throw DomainError("resolvent requires gamma * rho < 1 (" + describe(p) + ")");
  }

  double abs_sum = norm_1(term);
  auto finish = [&]() {
    // rounding in the partial sums relative to the result
    const double rounding = 4.0 * static_cast<double>(n) * kEps * abs_sum / norm_1(sum);
    if (rounding > kSeriesCancellationLimit) {
      throw ConvergenceError("ml_matrix_series: cancellation limits accuracy to " + std::to_string(rounding) + " (" +
                             describe(p) + ")");
    }
    return expect_finite(std::move(sum), "ml_matrix_series", p);
  };
  for (std::size_t r = 0; r < kSeriesTermCap; ++r) {
    const double x = p.alpha * static_cast<double>(r) + p.beta;
    // Gamma(x) / Gamma(x + alpha) is non-increasing in x, so q bounds every
    // later term ratio.
    const double g = std::exp(log_gamma(x) - log_gamma(x + p.alpha));
    const double q = p.gamma * anorm * g;
    const double tnorm = norm_1(term);
    if (tnorm == 0.0) return finish();
    if (q < 1.0) {
      const double tail = tnorm * q / (1.0 - q);
      if (tail <= tol * norm_1(sum)) return finish();
    }
    term = term * a;
    term *= p.gamma * g;
    sum += term;
    abs_sum += norm_1(term);
    if (!sum.all_finite()) throw OverflowError("ml_matrix_series: partial sum overflows (" + describe(p) + ")");
  }
  throw ConvergenceError("ml_matrix_series: no convergence within " + std::to_string(kSeriesTermCap) + " terms (" +
                         describe(p) + ")");
}

DenseMatrix ml_matrix_dense(const DenseMatrix& a, const MLParams& p, double tol) {
  p.validate();
  if (!a.square()) throw DomainError("ml_matrix_dense: matrix is not square");
  if (!a.all_finite()) throw DomainError("ml_matrix_dense: non-finite entries");
  const std::size_t n = a.rows();
  if (n == 0) return {};
  if (symmetric_enough(a)) return ml_matrix_eig(a, p, tol);
  if (p.alpha == 0.0) {
    const double rho = spectral_radius(a);
    if (!(p.gamma * rho < 1.0)) {
      throw DomainError("resolvent requires gamma * rho < 1 (" + describe(p) + ", gamma * rho = " +
                        std::to_string(p.gamma * rho) + ")");
    }
    DenseMatrix m = DenseMatrix::identity(n) - a * p.gamma;
    return inverse(m) * rgamma(p.beta);
  }
  if (p.alpha == 1.0 && p.beta == 1.0) return matrix_exp(a * p.gamma);
  return ml_matrix_series(a, p, tol);
}

DenseMatrix matrix_exp(const DenseMatrix& a) {
  if (!a.square()) throw DomainError("matrix_exp: matrix is not square");
  if (!a.all_finite()) throw DomainError("matrix_exp: non-finite entries");
  const std::size_t n = a.rows();
  if (n == 0) return {};
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double nrm = norm_1(a);
  int s = 0;
  if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
  const DenseMatrix as = a * std::ldexp(1.0, -s);

  const DenseMatrix id = DenseMatrix::identity(n);
  const DenseMatrix a2 = as * as;
  const DenseMatrix a4 = a2 * a2;
  const DenseMatrix a6 = a4 * a2;

  DenseMatrix u_inner = a6 * b[13] + a4 * b[11] + a2 * b[9];
  u_inner = a6 * u_inner;
  u_inner += a6 * b[7] + a4 * b[5] + a2 * b[3] + id * b[1];
  const DenseMatrix u = as * u_inner;

  DenseMatrix v = a6 * b[12] + a4 * b[10] + a2 * b[8];
  v = a6 * v;
  v += a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];

  DenseMatrix r = solve(v - u, v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  if (!r.all_finite()) throw OverflowError("matrix_exp: result overflows");
  return r;
}

DenseMatrix matrix_log_principal(const DenseMatrix& m) {
  if (!m.square()) throw DomainError("matrix_log_principal: matrix is not square");
  if (!m.all_finite()) throw DomainError("matrix_log_principal: non-finite entries");
  const std::size_t n = m.rows();
  if (n == 0) return {};

  if (symmetric_enough(m)) {
    const SymmetricEigen e = sym_eig(m);
    if (e.values.front() <= 0.0) {
      throw BranchError("matrix_log_principal: eigenvalue " + std::to_string(e.values.front()) +
                        " on the closed negative real axis");
    }
    DenseMatrix qf = e.vectors;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) qf(i, k) *= std::log(e.values[k]);
    return qf * e.vectors.transpose();
  }

  for (const auto& l : eigenvalues(m)) {
    if (l.real() <= 0.0 && std::abs(l.imag()) <= 1e-8 * std::max(1.0, std::abs(l))) {
      throw BranchError("matrix_log_principal: eigenvalue near the closed negative real axis (" +
                        std::to_string(l.real()) + ")");
    }
  }

  const DenseMatrix id = DenseMatrix::identity(n);
  DenseMatrix x = m;
  int squarings = 0;
  while (norm_1(x - id) > 0.25) {
    if (++squarings > 60) throw BranchError("matrix_log_principal: square roots did not approach I");
    // Denman-Beavers: Y -> sqrt(X), Z -> sqrt(X)^{-1}
    DenseMatrix y = x;
    DenseMatrix z = id;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      DenseMatrix yi, zi;
      try {
        yi = inverse(y);
        zi = inverse(z);
      } catch (const SingularMatrixError&) {
        throw BranchError("matrix_log_principal: singular iterate in square root");
      }
      DenseMatrix y_next = (y + zi) * 0.5;
      DenseMatrix z_next = (z + yi) * 0.5;
      const double change = norm_1(y_next - y);
      y = std::move(y_next);
      z = std::move(z_next);
      if (change <= 1e-15 * norm_1(y)) {
        converged = true;
        break;
      }
    }
    if (!converged || !y.all_finite()) throw BranchError("matrix_log_principal: square root iteration failed");
    x = std::move(y);
  }

  // log(I + X) = int_0^1 X (I + t X)^{-1} dt by 16-point Gauss-Legendre.
  using Rule = boost::math::quadrature::gauss<double, 16>;
  const DenseMatrix xm = x - id;
  DenseMatrix l(n, n);
  const auto& nodes = Rule::abscissa();
  const auto& weights = Rule::weights();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (double sgn : {-1.0, 1.0}) {
      if (nodes[k] == 0.0 && sgn < 0.0) continue;
      const double t = 0.5 * (1.0 + sgn * nodes[k]);
      const double w = 0.5 * weights[k];
      l += solve(id + xm * t, xm) * w;
    }
  }
  l *= std::ldexp(1.0, squarings);

  const DenseMatrix back = matrix_exp(l);
  if (norm_1(back - m) > 1e-8 * norm_1(m)) {
    throw BranchError("matrix_log_principal: exp(log M) does not reproduce M");
  }
  return l;
}

}  // namespace mlc
