#pragma once

#include "picrl/matrix.hpp"

namespace picrl::numerics {

// y = x W + b with b (1 x K_out) broadcast over rows.
Matrix affine_forward(const Matrix& x, const Matrix& w, const Matrix& b);

// Chain rule for the affine op: given dL/dy, accumulates dL/dW into dw and
// dL/db into db, and returns dL/dx.
Matrix affine_backward(const Matrix& x, const Matrix& w, const Matrix& dy, Matrix& dw, Matrix& db);

enum class Activation { kRelu, kTanh, kIdentity };

// Elementwise activation. Rejects non-finite inputs.
Matrix activate(const Matrix& x, Activation kind);

// dx = dy .* sigma'(x), from the pre-activation x. relu'(0) is 0.
Matrix activate_backward(const Matrix& x, const Matrix& dy, Activation kind);

}  // namespace picrl::numerics
