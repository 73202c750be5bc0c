#include "picrl/matrix.hpp"

#include <Eigen/Core>
#include <cmath>

#include "picrl/error.hpp"

namespace picrl::numerics {

namespace {

using EigenMap = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstEigenMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

ConstEigenMap map_of(const Matrix& m) {
  return ConstEigenMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                       static_cast<Eigen::Index>(m.cols()));
}

EigenMap map_of(Matrix& m) {
  return EigenMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                  static_cast<Eigen::Index>(m.cols()));
}

[[noreturn]] void shape_error(const char* op, const Matrix& a, const Matrix& b) {
  throw DimensionError(std::string(op) + ": incompatible shapes " + a.shape_str() + " and " +
                       b.shape_str());
}

}  // namespace

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged initializer");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::row(std::initializer_list<double> values) {
  Matrix m(1, values.size());
  std::size_t j = 0;
  for (double v : values) m(0, j++) = v;
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::string Matrix::shape_str() const {
  return "[" + std::to_string(rows_) + "x" + std::to_string(cols_) + "]";
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) shape_error("matmul", a, b);
  Matrix out(a.rows(), b.cols());
  map_of(out).noalias() = map_of(a) * map_of(b);
  return out;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) shape_error("matmul_tn", a, b);
  Matrix out(a.cols(), b.cols());
  map_of(out).noalias() = map_of(a).transpose() * map_of(b);
  return out;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) shape_error("matmul_nt", a, b);
  Matrix out(a.rows(), b.rows());
  map_of(out).noalias() = map_of(a) * map_of(b).transpose();
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  map_of(out) = map_of(a).transpose();
  return out;
}

Matrix col_sums(const Matrix& a) {
  Matrix out(1, a.cols());
  map_of(out) = map_of(a).colwise().sum();
  return out;
}

void add_inplace(Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) shape_error("add", a, b);
  map_of(a) += map_of(b);
}

void axpy_inplace(Matrix& a, double alpha, const Matrix& b) {
  if (!a.same_shape(b)) shape_error("axpy", a, b);
  map_of(a) += alpha * map_of(b);
}

void scale_inplace(Matrix& a, double alpha) { map_of(a) *= alpha; }

void add_row_broadcast(Matrix& a, const Matrix& row_vec) {
  if (row_vec.rows() != 1 || row_vec.cols() != a.cols()) shape_error("row_broadcast", a, row_vec);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* r = a.row_ptr(i);
    const double* v = row_vec.data();
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] += v[j];
  }
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) shape_error("max_abs_diff", a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace picrl::numerics
