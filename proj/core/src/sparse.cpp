#include "mlc/sparse.hpp"

#include <algorithm>
#include <numeric>

#include "mlc/error.hpp"

namespace mlc {

CsrMatrix::CsrMatrix(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> coords,
                     std::vector<double> values)
    : n_(n) {
  if (coords.size() != values.size()) throw DomainError("CsrMatrix: coordinate/value length mismatch");
  std::vector<std::size_t> order(coords.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return coords[a] < coords[b]; });

  row_ptr_.assign(n + 1, 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto [i, j] = coords[order[k]];
    if (i >= n || j >= n) throw DomainError("CsrMatrix: index out of range");
    if (!col_.empty() && k > 0 && coords[order[k - 1]] == coords[order[k]]) {
      val_.back() += values[order[k]];
      continue;
    }
    col_.push_back(j);
    val_.push_back(values[order[k]]);
    ++row_ptr_[i + 1];
  }
  std::partial_sum(row_ptr_.begin(), row_ptr_.end(), row_ptr_.begin());
}

CsrMatrix CsrMatrix::pattern(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& coords) {
  CsrMatrix m(n, coords, std::vector<double>(coords.size(), 1.0));
  std::fill(m.val_.begin(), m.val_.end(), 1.0);
  return m;
}

CsrMatrix CsrMatrix::from_dense(const DenseMatrix& a) {
  if (!a.square()) throw DomainError("CsrMatrix: matrix is not square");
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  std::vector<double> values;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0.0) {
        coords.emplace_back(i, j);
        values.push_back(a(i, j));
      }
  return CsrMatrix(a.rows(), std::move(coords), std::move(values));
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) throw DomainError("CsrMatrix: shape mismatch in multiply");
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += val_[k] * x[col_[k]];
    y[i] = s;
  }
}

Vector CsrMatrix::operator*(std::span<const double> x) const {
  Vector y(n_);
  multiply(x, y);
  return y;
}

DenseMatrix CsrMatrix::to_dense() const {
  DenseMatrix a(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) a(i, col_[k]) = val_[k];
  return a;
}

Vector CsrMatrix::row_sums() const {
  Vector s(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s[i] += val_[k];
  return s;
}

bool CsrMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::size_t j = col_[k];
      const auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[j]);
      const auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[j + 1]);
      const auto it = std::lower_bound(first, last, i);
      if (it == last || *it != i) return false;
      if (val_[static_cast<std::size_t>(it - col_.begin())] != val_[k]) return false;
    }
  }
  return true;
}

}  // namespace mlc
