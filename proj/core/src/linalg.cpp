#include "mlc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mlc/error.hpp"

namespace mlc {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 60;

void require_square(const DenseMatrix& a, const char* who) {
  if (!a.square()) throw DomainError(std::string(who) + ": matrix is not square");
}

// Implicit QL on a symmetric tridiagonal matrix (d diagonal, e[i] couples i
// and i+1, e[n-1] = 0). zt holds eigenvectors as rows and is rotated in place
// when non-null.
void tql2(Vector& d, Vector& e, DenseMatrix* zt) {
  const std::size_t n = d.size();
  if (n == 0) return;
  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > kEps * tst1) ++m;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxSweeps) throw ConvergenceError("sym_eig: QL iteration did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (zt) {
            double* zi = zt->row(ii);
            double* zi1 = zt->row(ii + 1);
            for (std::size_t k = 0; k < n; ++k) {
              h = zi1[k];
              zi1[k] = s * zi[k] + c * h;
              zi[k] = c * zi[k] - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > kEps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

// Householder reduction of symmetric v to tridiagonal form; on return v holds
// the orthogonal transformation, d the diagonal and e the sub-diagonal with
// e[0] = 0.
void tred2(DenseMatrix& v, Vector& d, Vector& e) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

SymmetricEigen sort_ascending(Vector d, const DenseMatrix* zt) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  SymmetricEigen out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = d[order[j]];
  if (zt) {
    out.vectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const double* z = zt->row(order[j]);
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = z[k];
    }
  }
  return out;
}

SymmetricEigen sym_eig_impl(const DenseMatrix& a, bool want_vectors) {
  require_square(a, "sym_eig");
  if (!a.all_finite()) throw DomainError("sym_eig: non-finite entries");
  const double scale = std::max(max_abs(a), std::numeric_limits<double>::min());
  if (!a.is_symmetric(1e-12 * scale)) throw DomainError("sym_eig: matrix is not symmetric");
  const std::size_t n = a.rows();
  if (n == 0) return {};

  DenseMatrix v = a;
  Vector d(n), e(n);
  tred2(v, d, e);
  // shift so e[i] couples i and i+1
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  if (!want_vectors) {
    tql2(d, e, nullptr);
    return sort_ascending(std::move(d), nullptr);
  }
  DenseMatrix zt = v.transpose();
  tql2(d, e, &zt);
  return sort_ascending(std::move(d), &zt);
}

}  // namespace

LUDecomposition lu_factor(const DenseMatrix& a) {
  require_square(a, "lu_factor");
  const std::size_t n = a.rows();
  LUDecomposition f{a, std::vector<std::size_t>(n)};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  DenseMatrix& lu = f.lu;
  const double threshold = std::max(norm_inf(a), std::numeric_limits<double>::min()) * n * kEps;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (std::abs(lu(p, k)) <= threshold) throw SingularMatrixError("lu_factor: matrix is singular to working precision");
    if (p != k) {
      std::swap_ranges(lu.row(k), lu.row(k) + n, lu.row(p));
      std::swap(f.perm[k], f.perm[p]);
    }
    const double pivot = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = lu(i, k) / pivot;
      lu(i, k) = m;
      if (m == 0.0) continue;
      double* ri = lu.row(i);
      const double* rk = lu.row(k);
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= m * rk[j];
    }
  }
  return f;
}

DenseMatrix lu_solve(const LUDecomposition& f, const DenseMatrix& b) {
  const std::size_t n = f.lu.rows();
  if (b.rows() != n) throw DomainError("lu_solve: shape mismatch");
  const std::size_t nc = b.cols();
  DenseMatrix x(n, nc);
  for (std::size_t i = 0; i < n; ++i) std::copy(b.row(f.perm[i]), b.row(f.perm[i]) + nc, x.row(i));
  for (std::size_t i = 0; i < n; ++i) {
    double* xi = x.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const double l = f.lu(i, k);
      if (l == 0.0) continue;
      const double* xk = x.row(k);
      for (std::size_t j = 0; j < nc; ++j) xi[j] -= l * xk[j];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double* xi = x.row(i);
    for (std::size_t k = i + 1; k < n; ++k) {
      const double u = f.lu(i, k);
      if (u == 0.0) continue;
      const double* xk = x.row(k);
      for (std::size_t j = 0; j < nc; ++j) xi[j] -= u * xk[j];
    }
    const double pivot = f.lu(i, i);
    for (std::size_t j = 0; j < nc; ++j) xi[j] /= pivot;
  }
  return x;
}

Vector lu_solve(const LUDecomposition& f, std::span<const double> b) {
  DenseMatrix bm(b.size(), 1);
  std::copy(b.begin(), b.end(), bm.data().begin());
  return lu_solve(f, bm).data();
}

DenseMatrix solve(const DenseMatrix& a, const DenseMatrix& b) { return lu_solve(lu_factor(a), b); }

DenseMatrix inverse(const DenseMatrix& a) { return solve(a, DenseMatrix::identity(a.rows())); }

SymmetricEigen sym_eig(const DenseMatrix& a) { return sym_eig_impl(a, true); }

Vector sym_eigvals(const DenseMatrix& a) { return sym_eig_impl(a, false).values; }

SymmetricEigen tridiag_eig(const Vector& d, const Vector& e, bool want_vectors) {
  const std::size_t n = d.size();
  if (n == 0) return {};
  if (e.size() + 1 != n) throw DomainError("tridiag_eig: off-diagonal must have length n - 1");
  Vector dd = d;
  Vector ee(n, 0.0);
  std::copy(e.begin(), e.end(), ee.begin());
  if (!want_vectors) {
    tql2(dd, ee, nullptr);
    return sort_ascending(std::move(dd), nullptr);
  }
  DenseMatrix zt = DenseMatrix::identity(n);
  tql2(dd, ee, &zt);
  return sort_ascending(std::move(dd), &zt);
}

std::vector<std::complex<double>> eigenvalues(const DenseMatrix& input) {
  require_square(input, "eigenvalues");
  if (!input.all_finite()) throw DomainError("eigenvalues: non-finite entries");
  const std::size_t n = input.rows();
  std::vector<std::complex<double>> out;
  if (n == 0) return out;
  DenseMatrix a = input;

  // Balance with powers of two.
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }

  // Reduce to upper Hessenberg by stabilized elimination.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double x = 0.0;
    std::size_t piv = m;
    for (std::size_t j = m; j < n; ++j) {
      if (std::abs(a(j, m - 1)) > std::abs(x)) {
        x = a(j, m - 1);
        piv = j;
      }
    }
    if (piv != m) {
      for (std::size_t j = m - 1; j < n; ++j) std::swap(a(piv, j), a(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(a(j, piv), a(j, m));
    }
    if (x != 0.0) {
      for (std::size_t i = m + 1; i < n; ++i) {
        double y = a(i, m - 1);
        if (y == 0.0) continue;
        y /= x;
        a(i, m - 1) = y;
        for (std::size_t j = m; j < n; ++j) a(i, j) -= y * a(m, j);
        for (std::size_t j = 0; j < n; ++j) a(j, m) += y * a(j, i);
      }
    }
  }
  for (std::size_t i = 2; i < n; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = 0.0;

  // Francis double-shift QR on the Hessenberg matrix (signed indices).
  std::vector<double> wr(n, 0.0), wi(n, 0.0);
  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = (i == 0 ? 0 : i - 1); j < n; ++j) anorm += std::abs(a(i, j));
  auto A = [&](long i, long j) -> double& { return a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
  auto sign = [](double x, double y) { return y >= 0.0 ? std::abs(x) : -std::abs(x); };

  long nn = static_cast<long>(n) - 1;
  double t = 0.0;
  long l = 0;
  while (nn >= 0) {
    int its = 0;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(A(l - 1, l - 1)) + std::abs(A(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(A(l, l - 1)) + s == s) {
          A(l, l - 1) = 0.0;
          break;
        }
      }
      double x = A(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0.0;
        --nn;
      } else {
        double y = A(nn - 1, nn - 1);
        double w = A(nn, nn - 1) * A(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -z;
            wi[nn] = z;
          }
          nn -= 2;
        } else {
          if (its == 60) throw ConvergenceError("eigenvalues: QR iteration did not converge");
          if (its == 10 || its == 20 || its == 40) {
            t += x;
            for (long i = 0; i <= nn; ++i) A(i, i) -= x;
            const double s = std::abs(A(nn, nn - 1)) + std::abs(A(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          long m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (; m >= l; --m) {
            z = A(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / A(m + 1, m) + A(m, m + 1);
            q = A(m + 1, m + 1) - z - r - s;
            r = A(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(A(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(A(m - 1, m - 1)) + std::abs(z) + std::abs(A(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (long i = m; i < nn - 1; ++i) {
            A(i + 2, i) = 0.0;
            if (i != m) A(i + 2, i - 1) = 0.0;
          }
          for (long k = m; k < nn; ++k) {
            if (k != m) {
              p = A(k, k - 1);
              q = A(k + 1, k - 1);
              r = 0.0;
              if (k + 1 != nn) r = A(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign(std::sqrt(p * p + q * q + r * r), p);
            if (s != 0.0) {
              if (k == m) {
                if (l != m) A(k, k - 1) = -A(k, k - 1);
              } else {
                A(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (long j = k; j <= nn; ++j) {
                p = A(k, j) + q * A(k + 1, j);
                if (k + 1 != nn) {
                  p += r * A(k + 2, j);
                  A(k + 2, j) -= p * z;
                }
                A(k + 1, j) -= p * y;
                A(k, j) -= p * x;
              }
              const long mmin = nn < k + 3 ? nn : k + 3;
              for (long i = l; i <= mmin; ++i) {
                p = x * A(i, k) + y * A(i, k + 1);
                if (k + 1 != nn) {
                  p += z * A(i, k + 2);
                  A(i, k + 2) -= p * r;
                }
                A(i, k + 1) -= p * q;
                A(i, k) -= p;
              }
            }
          }
        }
      }
    } while (l + 1 < nn);
  }
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

}  // namespace mlc
