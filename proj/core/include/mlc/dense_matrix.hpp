#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mlc {

using Vector = std::vector<double>;

/// Row-major dense real matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  explicit DenseMatrix(std::size_t n) : DenseMatrix(n, n) {}
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t n() const { return rows_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  DenseMatrix transpose() const;
  Vector diag() const;
  Vector column(std::size_t j) const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

  bool all_finite() const;
  bool is_symmetric(double tol = 0.0) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(DenseMatrix a, double s);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const double> x);

/// y = A^T x
Vector transpose_times(const DenseMatrix& a, std::span<const double> x);

double norm_1(const DenseMatrix& a);
double norm_inf(const DenseMatrix& a);
double norm_fro(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);
/// max_ij |a_ij - b_ij|
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm_2(std::span<const double> x);
double norm_inf(std::span<const double> x);
/// y += s x
void axpy(double s, std::span<const double> x, std::span<double> y);

}  // namespace mlc
