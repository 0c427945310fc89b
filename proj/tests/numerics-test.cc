// tests/numerics-test.cc

// Copyright 2026  The vawgan authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstring>
#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "test-util.h"
#include "vawgan/errors.h"
#include "vawgan/numerics/grad-check.h"
#include "vawgan/numerics/graph.h"

namespace vawgan {
namespace {

using testing::RandomMatrix;
using testing::RandomParam;

TEST(Forward, IdentityMatmul) {
  Graph<double> g;
  Matrix<double> eye = Matrix<double>::Identity(2, 2);
  Matrix<double> v(2, 1);
  v << 3.5, -1.25;
  Var<double> out = matmul(g.Constant(eye), g.Constant(v));
  EXPECT_EQ(out.value()(0, 0), 3.5);
  EXPECT_EQ(out.value()(1, 0), -1.25);
}

TEST(Forward, FixedPoints) {
  Graph<double> g;
  Matrix<double> zero = Matrix<double>::Zero(1, 1);
  Matrix<double> minus_one = Matrix<double>::Constant(1, 1, -1.0);
  EXPECT_EQ(tanh(g.Constant(zero)).value()(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(leaky_relu(g.Constant(minus_one), 0.2).value()(0, 0), -0.2);
  EXPECT_EQ(leaky_relu(g.Constant(zero)).value()(0, 0), 0.0);
}

TEST(Forward, MlpMatchesHandArithmetic) {
  RngState rng(11);
  const int dims[] = {5, 7, 6, 3};
  std::vector<Matrix<double>> w, b;
  for (int l = 0; l < 3; ++l) {
    w.push_back(RandomMatrix(rng, dims[l], dims[l + 1]));
    b.push_back(RandomMatrix(rng, 1, dims[l + 1]));
  }
  Matrix<double> x = RandomMatrix(rng, 4, 5);

  Graph<double> g;
  Var<double> h = g.Constant(x);
  for (int l = 0; l < 3; ++l) {
    h = add_bias(matmul(h, g.Constant(w[l])), g.Constant(b[l]));
    if (l < 2) h = tanh(h);
  }

  // Plain loops, no Eigen products.
  std::vector<std::vector<double>> cur(4, std::vector<double>(5));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 5; ++c) cur[r][c] = x(r, c);
  for (int l = 0; l < 3; ++l) {
    std::vector<std::vector<double>> next(4, std::vector<double>(dims[l + 1]));
    for (int r = 0; r < 4; ++r)
      for (int j = 0; j < dims[l + 1]; ++j) {
        double acc = b[l](0, j);
        for (int i = 0; i < dims[l]; ++i) acc += cur[r][i] * w[l](i, j);
        next[r][j] = l < 2 ? std::tanh(acc) : acc;
      }
    cur = next;
  }
  for (int r = 0; r < 4; ++r)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(h.value()(r, j), cur[r][j], 1e-12);
}

TEST(Forward, ShapeMismatchNamesNode) {
  Graph<double> g;
  Var<double> a = g.Constant(Matrix<double>::Zero(2, 3));
  Var<double> b = g.Constant(Matrix<double>::Zero(2, 3));
  try {
    matmul(a, b);
    FAIL() << "expected ShapeError";
  } catch (const ShapeError &e) {
    EXPECT_NE(std::string(e.what()).find("matmul"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("node"), std::string::npos) << e.what();
  }
  EXPECT_THROW(a + g.Constant(Matrix<double>::Zero(3, 2)), ShapeError);
}

TEST(Forward, PureAndRepeatable) {
  RngState rng(3);
  Matrix<double> x = RandomMatrix(rng, 3, 8);
  Matrix<double> w = RandomMatrix(rng, 4, 2 * 3);
  Matrix<double> b = RandomMatrix(rng, 1, 4);
  Conv1dShape s{2, 4, 4, 3, 1, 1};
  auto run = [&] {
    Graph<double> g;
    return tanh(conv1d(g.Constant(x), g.Constant(w), g.Constant(b), s)).value();
  };
  Matrix<double> x_copy = x;
  Matrix<double> first = run();
  Matrix<double> second = run();
  EXPECT_EQ(0, std::memcmp(first.data(), second.data(), sizeof(double) * first.size()));
  EXPECT_TRUE(x == x_copy);
}

TEST(Backward, SumOfSquares) {
  Parameter<double> x("x", {1, 2}, 1, 2);
  x.value << 1, 2;
  Graph<double> g;
  GradientMap<double> grads = g.Backward(sum(square(g.Param(x))));
  EXPECT_DOUBLE_EQ(grads.at(&x)(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(grads.at(&x)(0, 1), 4.0);
}

TEST(Backward, ScaledInput) {
  Parameter<double> x("x", {1, 1}, 1, 1);
  x.value << 0.7;
  Graph<double> g;
  GradientMap<double> grads = g.Backward(sum(scale(g.Param(x), -3.25)));
  EXPECT_DOUBLE_EQ(grads.at(&x)(0, 0), -3.25);
}

TEST(Backward, RejectsNonScalar) {
  Graph<double> g;
  Var<double> v = g.Input(Matrix<double>::Ones(2, 2));
  EXPECT_THROW(g.Backward(v), ShapeError);
}

TEST(Backward, ConvMlpCompositeMatchesFiniteDifferences) {
  RngState rng(5);
  Conv1dShape s{2, 6, 3, 3, 2, 1};
  Parameter<double> x = RandomParam(rng, "x", 4, 2 * 6);
  Parameter<double> cw = RandomParam(rng, "cw", 3, 2 * 3, 0.5);
  Parameter<double> cb = RandomParam(rng, "cb", 1, 3);
  Parameter<double> w = RandomParam(rng, "w", 3 * s.out_length(), 2, 0.5);
  Parameter<double> b = RandomParam(rng, "b", 1, 2);
  ScalarFunction<double> fn = [&](Graph<double> &g) {
    Var<double> h = leaky_relu(conv1d(g.Param(x), g.Param(cw), g.Param(cb), s));
    return mean(square(tanh(add_bias(matmul(h, g.Param(w)), g.Param(b)))));
  };
  std::vector<Parameter<double> *> ps{&x, &cw, &cb, &w, &b};
  EXPECT_LT(grad_check<double>(fn, ps, 1e-5), 1e-4);
}

TEST(GradCheck, ExactForLinearAndQuadratic) {
  RngState rng(8);
  Parameter<double> x = RandomParam(rng, "x", 3, 4);
  Matrix<double> c = RandomMatrix(rng, 3, 4);
  std::vector<Parameter<double> *> ps{&x};
  ScalarFunction<double> linear = [&](Graph<double> &g) { return sum(mul(g.Param(x), g.Constant(c))); };
  ScalarFunction<double> quadratic = [&](Graph<double> &g) {
    return sum(mul(square(g.Param(x)), g.Constant(c)));
  };
  EXPECT_LT(grad_check<double>(linear, ps, 1e-5), 1e-9);
  EXPECT_LT(grad_check<double>(quadratic, ps, 1e-5), 1e-9);
}

TEST(GradCheck, RejectsNonPositiveStep) {
  Parameter<double> x("x", {1, 1}, 1, 1);
  std::vector<Parameter<double> *> ps{&x};
  ScalarFunction<double> fn = [&](Graph<double> &g) { return sum(g.Param(x)); };
  EXPECT_THROW(grad_check<double>(fn, ps, 0.0), ConfigError);
  EXPECT_THROW(grad_check<double>(fn, ps, -1e-5), ConfigError);
}

TEST(GradCheck, RestoresParameters) {
  RngState rng(9);
  Parameter<double> x = RandomParam(rng, "x", 2, 3);
  Matrix<double> before = x.value;
  std::vector<Parameter<double> *> ps{&x};
  ScalarFunction<double> fn = [&](Graph<double> &g) { return sum(exp(g.Param(x))); };
  grad_check<double>(fn, ps, 1e-5);
  EXPECT_TRUE(x.value == before);
}

// One unary or binary primitive, reduced to a scalar by a random weighting.
struct PrimitiveCase {
  const char *name;
  std::function<Var<double>(Graph<double> &, Var<double>, Var<double>)> op;
  Index a_rows, a_cols, b_rows, b_cols;
  bool positive_a = false;
};

class PrimitiveGradient : public ::testing::TestWithParam<PrimitiveCase> {};

TEST_P(PrimitiveGradient, MatchesFiniteDifferencesOverRandomPoints) {
  const PrimitiveCase &c = GetParam();
  RngState rng(1234);
  double worst = 0;
  for (int point = 0; point < 100; ++point) {
    Parameter<double> a = RandomParam(rng, "a", c.a_rows, c.a_cols);
    if (c.positive_a) a.value = a.value.array().abs() + 0.1;
    Parameter<double> b = RandomParam(rng, "b", c.b_rows, c.b_cols);
    Matrix<double> weight;
    {
      Graph<double> g;
      Var<double> out = c.op(g, g.Param(a), g.Param(b));
      weight = RandomMatrix(rng, out.rows(), out.cols());
    }
    ScalarFunction<double> fn = [&](Graph<double> &g) {
      return sum(mul(c.op(g, g.Param(a), g.Param(b)), g.Constant(weight)));
    };
    std::vector<Parameter<double> *> ps{&a, &b};
    worst = std::max(worst, grad_check<double>(fn, ps, 1e-5));
  }
  EXPECT_LT(worst, 1e-4) << c.name;
}

using G = Graph<double>;
using V = Var<double>;

const Conv1dShape kStrided{2, 7, 3, 3, 2, 1};

INSTANTIATE_TEST_SUITE_P(
    AllPrimitives, PrimitiveGradient,
    ::testing::Values(
        PrimitiveCase{"matmul", [](G &, V a, V b) { return matmul(a, b); }, 3, 4, 4, 2},
        PrimitiveCase{"add", [](G &, V a, V b) { return a + b; }, 3, 4, 3, 4},
        PrimitiveCase{"sub", [](G &, V a, V b) { return a - b; }, 3, 4, 3, 4},
        PrimitiveCase{"mul", [](G &, V a, V b) { return mul(a, b); }, 3, 4, 3, 4},
        PrimitiveCase{"scale", [](G &, V a, V) { return scale(a, -1.7); }, 3, 4, 1, 1},
        PrimitiveCase{"add_bias", [](G &, V a, V b) { return add_bias(a, b); }, 3, 4, 1, 4},
        PrimitiveCase{"broadcast", [](G &, V, V b) { return broadcast_rows(b, 5); }, 1, 1, 1, 4},
        PrimitiveCase{"leaky_relu", [](G &, V a, V) { return leaky_relu(a, 0.2); }, 3, 4, 1, 1},
        PrimitiveCase{"tanh", [](G &, V a, V) { return tanh(a); }, 3, 4, 1, 1},
        PrimitiveCase{"exp", [](G &, V a, V) { return exp(a); }, 3, 4, 1, 1},
        PrimitiveCase{"log", [](G &, V a, V) { return log(a); }, 3, 4, 1, 1, true},
        PrimitiveCase{"square", [](G &, V a, V) { return square(a); }, 3, 4, 1, 1},
        PrimitiveCase{"softplus", [](G &, V a, V) { return softplus(a); }, 3, 4, 1, 1},
        PrimitiveCase{"clamp", [](G &, V a, V) { return clamp(a, -0.5, 0.5); }, 3, 4, 1, 1},
        PrimitiveCase{"sum", [](G &, V a, V) { return sum(a); }, 3, 4, 1, 1},
        PrimitiveCase{"mean", [](G &, V a, V) { return mean(a); }, 3, 4, 1, 1},
        PrimitiveCase{"concat", [](G &, V a, V b) { return concat_cols(a, b); }, 3, 4, 3, 2},
        PrimitiveCase{"upsample", [](G &, V a, V) { return upsample(a, 2, 2); }, 3, 6, 1, 1},
        PrimitiveCase{"conv1d_input",
                      [](G &g, V a, V b) {
                        Matrix<double> bias = Matrix<double>::Constant(1, 3, 0.1);
                        return conv1d(a, b, g.Constant(bias), kStrided);
                      },
                      2, 14, 3, 6}),
    [](const ::testing::TestParamInfo<PrimitiveCase> &info) { return std::string(info.param.name); });

TEST(Conv1d, BiasGradientAndHandComputedValues) {
  // One channel, kernel [1, 2, 3], padding 1, stride 1 over [1, 0, 2].
  Graph<double> g;
  Matrix<double> x(1, 3);
  x << 1, 0, 2;
  Matrix<double> w(1, 3);
  w << 1, 2, 3;
  Parameter<double> bias("bias", {1, 1}, 1, 1);
  bias.value << 0.5;
  Conv1dShape s{1, 3, 1, 3, 1, 1};
  Var<double> y = conv1d(g.Constant(x), g.Constant(w), g.Param(bias), s);
  // y_l = sum_k w_k x_{l+k-1}
  EXPECT_DOUBLE_EQ(y.value()(0, 0), 0 * 1 + 1 * 2 + 0 * 3 + 0.5);
  EXPECT_DOUBLE_EQ(y.value()(0, 1), 1 * 1 + 0 * 2 + 2 * 3 + 0.5);
  EXPECT_DOUBLE_EQ(y.value()(0, 2), 0 * 1 + 2 * 2 + 0 * 3 + 0.5);
  GradientMap<double> grads = g.Backward(sum(y));
  EXPECT_DOUBLE_EQ(grads.at(&bias)(0, 0), 3.0);
}

TEST(Conv1d, RejectsBadGeometry) {
  Graph<double> g;
  Conv1dShape s{2, 4, 3, 3, 1, 1};
  Var<double> x = g.Constant(Matrix<double>::Zero(2, 7));  // should be 8 columns
  Var<double> w = g.Constant(Matrix<double>::Zero(3, 6));
  Var<double> b = g.Constant(Matrix<double>::Zero(1, 3));
  EXPECT_THROW(conv1d(x, w, b, s), ShapeError);
}

TEST(Backward, LinearityOverSummedTerms) {
  RngState rng(21);
  Parameter<double> a = RandomParam(rng, "a", 3, 3);
  Parameter<double> b = RandomParam(rng, "b", 3, 3);
  auto term1 = [&](G &g) { return sum(tanh(matmul(g.Param(a), g.Param(b)))); };
  auto term2 = [&](G &g) { return mean(square(g.Param(a) - g.Param(b))); };
  GradientMap<double> g1, g2, gs;
  {
    G g;
    g1 = g.Backward(term1(g));
  }
  {
    G g;
    g2 = g.Backward(term2(g));
  }
  {
    G g;
    gs = g.Backward(term1(g) + term2(g));
  }
  for (Parameter<double> *p : {&a, &b})
    EXPECT_LT((gs.at(p) - g1.at(p) - g2.at(p)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Backward, RepeatableOnSameGraph) {
  RngState rng(2);
  Parameter<double> a = RandomParam(rng, "a", 2, 2);
  G g;
  V out = sum(exp(g.Param(a)));
  GradientMap<double> first = g.Backward(out);
  GradientMap<double> second = g.Backward(out);
  EXPECT_TRUE(first.at(&a) == second.at(&a));
}

TEST(Rng, StandardNormalMoments) {
  RngState rng(77);
  Matrix<double> draws = sample_standard_normal<double>(rng, 1, 100000);
  const double m = draws.mean();
  const double v = (draws.array() - m).square().mean();
  EXPECT_LT(std::abs(m), 0.02);
  EXPECT_LT(std::abs(v - 1.0), 0.02);
}

TEST(Rng, SameSeedSameDraws) {
  RngState a(42), b(42);
  Matrix<double> x = sample_standard_normal<double>(a, 2, 3);
  Matrix<double> y = sample_standard_normal<double>(b, 2, 3);
  EXPECT_EQ(x.size(), 6);
  EXPECT_TRUE(x == y);
  EXPECT_EQ(a.counter(), b.counter());
  EXPECT_GT(a.counter(), 0u);
}

}  // namespace
}  // namespace vawgan
