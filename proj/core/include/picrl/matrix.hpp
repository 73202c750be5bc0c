#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace picrl::numerics {

// Dense row-major matrix of doubles. The only tensor type in the project;
// vectors (biases, single observations) are 1 x K matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix row(std::initializer_list<double> values);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
  const double* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  std::string shape_str() const;

  void fill(double value) { data_.assign(data_.size(), value); }
  void set_zero() { fill(0.0); }
  bool all_finite() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Throws DimensionError naming both shapes when operands do not conform.
Matrix matmul(const Matrix& a, const Matrix& b);     // a * b
Matrix matmul_tn(const Matrix& a, const Matrix& b);  // a^T * b
Matrix matmul_nt(const Matrix& a, const Matrix& b);  // a * b^T

Matrix transpose(const Matrix& a);
Matrix col_sums(const Matrix& a);  // 1 x C

void add_inplace(Matrix& a, const Matrix& b);             // a += b
void axpy_inplace(Matrix& a, double alpha, const Matrix& b);  // a += alpha * b
void scale_inplace(Matrix& a, double alpha);
void add_row_broadcast(Matrix& a, const Matrix& row_vec);  // a.row(i) += row_vec

double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace picrl::numerics
