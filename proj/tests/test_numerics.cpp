#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "picrl/error.hpp"
#include "picrl/grad_check.hpp"
#include "picrl/layers.hpp"
#include "picrl/mlp.hpp"
#include "picrl/rng.hpp"

using namespace picrl;
using namespace picrl::numerics;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double scale = 1.0) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = rng.uniform(-scale, scale);
  return m;
}

}  // namespace

TEST_CASE("affine identity weights") {
  const Matrix x = Matrix::from_rows({{1, 2}});
  const Matrix y = affine_forward(x, Matrix::identity(2), Matrix(1, 2));
  CHECK(y(0, 0) == 1.0);
  CHECK(y(0, 1) == 2.0);
}

TEST_CASE("affine hand product and backward") {
  const Matrix x = Matrix::from_rows({{1, 1}});
  const Matrix w = Matrix::from_rows({{2}, {3}});
  const Matrix b = Matrix::row({1});
  const Matrix y = affine_forward(x, w, b);
  CHECK(y(0, 0) == doctest::Approx(6.0).epsilon(1e-15));

  Matrix dw(2, 1), db(1, 1);
  const Matrix dx = affine_backward(x, w, Matrix::from_rows({{1}}), dw, db);
  CHECK(dw(0, 0) == 1.0);
  CHECK(dw(1, 0) == 1.0);
  CHECK(db(0, 0) == 1.0);
  CHECK(dx(0, 0) == 2.0);
  CHECK(dx(0, 1) == 3.0);
}

TEST_CASE("affine shape mismatch names both shapes") {
  const Matrix x(2, 3);
  const Matrix w(4, 5);
  try {
    matmul(x, w);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("[2x3]") != std::string::npos);
    CHECK(msg.find("[4x5]") != std::string::npos);
  }
}

TEST_CASE("affine is linear in its input when b = 0") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix w = random_matrix(4, 3, rng);
    const Matrix b(1, 3);
    const Matrix x1 = random_matrix(2, 4, rng);
    const Matrix x2 = random_matrix(2, 4, rng);
    const double alpha = rng.uniform(-2.0, 2.0);
    const double beta = rng.uniform(-2.0, 2.0);
    Matrix mix(2, 4);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = alpha * x1[i] + beta * x2[i];
    const Matrix lhs = affine_forward(mix, w, b);
    const Matrix y1 = affine_forward(x1, w, b);
    const Matrix y2 = affine_forward(x2, w, b);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      CHECK(lhs[i] == doctest::Approx(alpha * y1[i] + beta * y2[i]).epsilon(1e-12));
  }
}

TEST_CASE("activations") {
  const Matrix x = Matrix::row({-1, 0, 2});
  const Matrix r = activate(x, Activation::kRelu);
  CHECK(r(0, 0) == 0.0);
  CHECK(r(0, 1) == 0.0);
  CHECK(r(0, 2) == 2.0);

  CHECK(activate(Matrix::row({0}), Activation::kTanh)(0, 0) == 0.0);

  const Matrix dx =
      activate_backward(Matrix::row({-1, 2}), Matrix::row({5, 5}), Activation::kRelu);
  CHECK(dx(0, 0) == 0.0);
  CHECK(dx(0, 1) == 5.0);

  Matrix bad = Matrix::row({1});
  bad[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(activate(bad, Activation::kRelu), Fault);
}

TEST_CASE("relu derivative at zero is zero") {
  const Matrix dx = activate_backward(Matrix::row({0.0}), Matrix::row({7.0}), Activation::kRelu);
  CHECK(dx(0, 0) == 0.0);
}

TEST_CASE("adam zero gradients leave params unchanged and bump t") {
  ParamSet params;
  params.add("w", 2, 2).value(0, 0) = 1.5;
  AdamState adam(params);
  adam.step(params, 0.001);
  CHECK(adam.steps() == 1);
  CHECK(params.at("w").value(0, 0) == 1.5);
  CHECK(params.at("w").value(1, 1) == 0.0);
}

TEST_CASE("adam first step on a unit gradient") {
  ParamSet params;
  Param& p = params.add("theta", 1, 1);
  p.value[0] = 0.7;
  p.grad[0] = 1.0;
  AdamState adam(params);
  adam.step(params, 0.001);
  // Closed form with bias correction: lr * 1 / (1 + eps) at t = 1.
  CHECK(p.value[0] == doctest::Approx(0.7 - 0.000999999990000001).epsilon(1e-14));
  CHECK(p.grad[0] == 1.0);  // gradient slot untouched
}

TEST_CASE("adam with lr 0 is a no-op on values") {
  ParamSet params;
  Param& p = params.add("theta", 1, 3);
  p.value[1] = -2.0;
  p.grad[0] = 4.0;
  p.grad[1] = -1.0;
  AdamState adam(params);
  adam.step(params, 0.0);
  CHECK(p.value[0] == 0.0);
  CHECK(p.value[1] == -2.0);
  CHECK(adam.steps() == 1);
}

TEST_CASE("adam is deterministic") {
  auto run = [] {
    Rng rng(3);
    ParamSet params;
    Param& p = params.add("w", 3, 4);
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      p.value[i] = rng.uniform(-1, 1);
      p.grad[i] = rng.uniform(-1, 1);
    }
    AdamState adam(params);
    for (int s = 0; s < 5; ++s) adam.step(params, 0.01);
    return params;
  };
  const ParamSet a = run();
  const ParamSet b = run();
  for (std::size_t i = 0; i < a[0].value.size(); ++i) CHECK(a[0].value[i] == b[0].value[i]);
}

TEST_CASE("adam rejects non-finite gradients naming the parameter") {
  ParamSet params;
  Param& p = params.add("w_bad", 1, 1);
  p.grad[0] = std::numeric_limits<double>::infinity();
  AdamState adam(params);
  try {
    adam.step(params, 0.01);
    FAIL("expected Fault");
  } catch (const Fault& e) {
    CHECK(std::string(e.what()).find("w_bad") != std::string::npos);
  }
}

TEST_CASE("grad_check on a quadratic") {
  ParamSet params;
  Param& p = params.add("theta", 1, 1);
  p.value[0] = 3.0;
  p.grad[0] = 6.0;  // d theta^2 / d theta
  const double err = grad_check([](const ParamSet& ps) { return ps[0].value[0] * ps[0].value[0]; },
                                params, 1e-5);
  CHECK(err <= 1e-7);
  CHECK(p.value[0] == 3.0);  // restored exactly
}

TEST_CASE("grad_check on a constant function") {
  ParamSet params;
  params.add("theta", 2, 2);
  const double err = grad_check([](const ParamSet&) { return 1.25; }, params, 1e-5);
  CHECK(err == 0.0);
}

TEST_CASE("grad_check flags an analytic gradient off by 2x") {
  ParamSet params;
  Param& p = params.add("theta", 1, 1);
  p.value[0] = 3.0;
  p.grad[0] = 12.0;  // deliberately doubled
  const double err = grad_check([](const ParamSet& ps) { return ps[0].value[0] * ps[0].value[0]; },
                                params, 1e-5);
  CHECK(err == doctest::Approx(0.5).epsilon(1e-6));
}

// Spec invariant: every layer's analytic backward agrees with central
// differences to 1e-5 over >= 100 random configurations.
TEST_CASE("layer gradients pass the finite-difference oracle") {
  Rng rng(2024);
  int checked = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t b = 1 + rng.integer(3);
    const std::size_t k_in = 1 + rng.integer(4);
    const std::size_t k_out = 1 + rng.integer(4);
    const Activation act = rep % 2 == 0 ? Activation::kTanh : Activation::kRelu;

    ParamSet params;
    Param& w = params.add("w", k_in, k_out);
    Param& bias = params.add("b", 1, k_out);
    for (std::size_t i = 0; i < w.value.size(); ++i) w.value[i] = rng.uniform(-1, 1);
    for (std::size_t i = 0; i < bias.value.size(); ++i) bias.value[i] = rng.uniform(-1, 1);
    const Matrix x = random_matrix(b, k_in, rng);
    const Matrix c = random_matrix(b, k_out, rng);  // fixed readout weights

    auto f = [&](const ParamSet& ps) {
      const Matrix y = activate(affine_forward(x, ps.at("w").value, ps.at("b").value), act);
      double s = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) s += c[i] * y[i];
      return s;
    };

    params.zero_grads();
    const Matrix u = affine_forward(x, w.value, bias.value);
    const Matrix dy = activate_backward(u, c, act);
    affine_backward(x, w.value, dy, w.grad, bias.grad);

    const double err = grad_check(f, params, 1e-5);
    CHECK(err <= 1e-5);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("mlp backward matches finite differences") {
  Rng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    Mlp net({3, 5, 4, 2}, Activation::kTanh, rng);
    const Matrix x = random_matrix(2, 3, rng);
    const Matrix c = random_matrix(2, 2, rng);
    auto f = [&](const ParamSet&) {
      Mlp copy = net;  // evaluate with perturbed params
      const Matrix y = copy.forward(x);
      double s = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) s += c[i] * y[i];
      return s;
    };
    net.params().zero_grads();
    net.forward(x);
    net.backward(c);
    const double err = grad_check(f, net.params(), 1e-5);
    CHECK(err <= 1e-5);
  }
}

TEST_CASE("mlp backward without forward faults") {
  Rng rng(5);
  Mlp net({2, 3, 1}, Activation::kRelu, rng);
  CHECK_THROWS_AS(net.backward(Matrix(1, 1)), Fault);
}
