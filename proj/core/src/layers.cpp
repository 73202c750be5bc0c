#include "picrl/layers.hpp"

#include <cmath>

#include "picrl/error.hpp"

namespace picrl::numerics {

Matrix affine_forward(const Matrix& x, const Matrix& w, const Matrix& b) {
  Matrix y = matmul(x, w);
  add_row_broadcast(y, b);
  return y;
}

Matrix affine_backward(const Matrix& x, const Matrix& w, const Matrix& dy, Matrix& dw,
                       Matrix& db) {
  add_inplace(dw, matmul_tn(x, dy));
  add_inplace(db, col_sums(dy));
  return matmul_nt(dy, w);
}

Matrix activate(const Matrix& x, Activation kind) {
  if (!x.all_finite()) throw Fault("activate: non-finite input");
  Matrix y(x.rows(), x.cols());
  switch (kind) {
    case Activation::kRelu:
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
      break;
    case Activation::kTanh:
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::tanh(x[i]);
      break;
    case Activation::kIdentity:
      y = x;
      break;
  }
  return y;
}

Matrix activate_backward(const Matrix& x, const Matrix& dy, Activation kind) {
  if (!x.same_shape(dy))
    throw DimensionError("activate_backward: shapes " + x.shape_str() + " and " + dy.shape_str());
  Matrix dx(x.rows(), x.cols());
  switch (kind) {
    case Activation::kRelu:
      for (std::size_t i = 0; i < x.size(); ++i) dx[i] = x[i] > 0.0 ? dy[i] : 0.0;
      break;
    case Activation::kTanh:
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = std::tanh(x[i]);
        dx[i] = dy[i] * (1.0 - t * t);
      }
      break;
    case Activation::kIdentity:
      dx = dy;
      break;
  }
  return dx;
}

}  // namespace picrl::numerics
