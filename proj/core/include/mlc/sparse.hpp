#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mlc/dense_matrix.hpp"

namespace mlc {

/// Square matrix in compressed sparse row form.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// Builds from (row, col, value) triplets; duplicates are summed.
  CsrMatrix(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> coords, std::vector<double> values);
  /// 0/1 pattern from coordinates.
  static CsrMatrix pattern(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& coords);
  static CsrMatrix from_dense(const DenseMatrix& a);

  std::size_t n() const { return n_; }
  std::size_t nnz() const { return col_.size(); }
  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::size_t>& col_idx() const { return col_; }
  const std::vector<double>& values() const { return val_; }

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  Vector operator*(std::span<const double> x) const;

  DenseMatrix to_dense() const;
  Vector row_sums() const;
  bool is_symmetric() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_;
  std::vector<double> val_;
};

}  // namespace mlc
