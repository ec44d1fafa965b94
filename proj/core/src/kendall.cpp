#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "mlc/centrality.hpp"
#include "mlc/error.hpp"

namespace mlc {
namespace {

std::int64_t pairs(std::int64_t t) { return t * (t - 1) / 2; }

// Sorts v in place and returns the number of inversions (strict).
std::int64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (y.size() != n) throw DomainError("kendall_tau: length mismatch");
  if (n < 2) throw DomainError("kendall_tau: need at least two observations");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(x[i]) || std::isnan(y[i])) throw DomainError("kendall_tau: NaN input");
  }

  // Knight's algorithm.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  const auto n0 = pairs(static_cast<std::int64_t>(n));
  std::int64_t n1 = 0, n3 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    n1 += pairs(static_cast<std::int64_t>(j - i));
    for (std::size_t a = i; a < j;) {
      std::size_t b = a + 1;
      while (b < j && y[order[b]] == y[order[a]]) ++b;
      n3 += pairs(static_cast<std::int64_t>(b - a));
      a = b;
    }
    i = j;
  }

  std::vector<double> ys(n), buf(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  const std::int64_t swaps = merge_count(ys, buf, 0, n);

  std::int64_t n2 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && ys[j] == ys[i]) ++j;
    n2 += pairs(static_cast<std::int64_t>(j - i));
    i = j;
  }

  if (n0 == n1 || n0 == n2) throw DegenerateError("kendall_tau: constant input has no ranking");
  const double s = static_cast<double>(n0 - n1 - n2 + n3) - 2.0 * static_cast<double>(swaps);
  const double tau = s / std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
  return std::clamp(tau, -1.0, 1.0);
}

}  // namespace mlc
