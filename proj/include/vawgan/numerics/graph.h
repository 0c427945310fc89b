// vawgan/numerics/graph.h

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

#ifndef VAWGAN_NUMERICS_GRAPH_H_
#define VAWGAN_NUMERICS_GRAPH_H_

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vawgan/errors.h"
#include "vawgan/numerics/tensor.h"

namespace vawgan {

template <typename Scalar>
class Graph;

/// Handle to a node of a Graph. Cheap to copy; valid as long as its graph.
template <typename Scalar>
class Var {
 public:
  Var() = default;

  Graph<Scalar> *graph() const { return graph_; }
  int id() const { return id_; }
  bool valid() const { return graph_ != nullptr; }

  const Matrix<Scalar> &value() const { return graph_->value(*this); }
  Index rows() const { return value().rows(); }
  Index cols() const { return value().cols(); }

 private:
  friend class Graph<Scalar>;
  Var(Graph<Scalar> *g, int id) : graph_(g), id_(id) {}

  Graph<Scalar> *graph_ = nullptr;
  int id_ = -1;
};

template <typename Scalar>
using GradientMap = std::unordered_map<const Parameter<Scalar> *, Matrix<Scalar>>;

/// Define-by-run tape of primitive operations. Nodes are appended in
/// topological order as the free functions below are called; Backward()
/// visits them in exact reverse order.
template <typename Scalar>
class Graph {
 public:
  using Mat = Matrix<Scalar>;
  // Receives the node's upstream gradient and adds contributions to inputs.
  using BackwardFn = std::function<void(Graph &, const Mat &upstream)>;

  Graph() = default;
  Graph(const Graph &) = delete;
  Graph &operator=(const Graph &) = delete;

  Var<Scalar> Constant(Mat value, std::string name = "constant") {
    return Push(std::move(name), std::move(value), false, nullptr, {});
  }

  // A leaf that collects a gradient but is not tied to a Parameter.
  Var<Scalar> Input(Mat value, std::string name = "input") {
    return Push(std::move(name), std::move(value), true, nullptr, {});
  }

  // Leaf bound to a parameter; repeated calls reuse the same node so that
  // gradients from every use accumulate.
  Var<Scalar> Param(const Parameter<Scalar> &p) {
    auto it = param_nodes_.find(&p);
    if (it != param_nodes_.end()) return Var<Scalar>(this, it->second);
    Var<Scalar> v = Push(p.name, p.value, true, &p, {});
    param_nodes_.emplace(&p, v.id());
    return v;
  }

  // Appends an interior node. requires_grad is inherited from the inputs.
  Var<Scalar> Record(std::string op, Mat value, std::vector<int> inputs, BackwardFn fn) {
    bool rg = false;
    for (int i : inputs) rg = rg || nodes_[i].requires_grad;
    return Push(std::move(op), std::move(value), rg, nullptr, std::move(fn));
  }

  const Mat &value(Var<Scalar> v) const { return nodes_.at(v.id()).value; }
  const Mat &value(int id) const { return nodes_[id].value; }
  const std::string &op(int id) const { return nodes_[id].op; }
  bool requires_grad(int id) const { return nodes_[id].requires_grad; }
  std::size_t size() const { return nodes_.size(); }

  // Gradient of the last Backward() output w.r.t. v (zeros if unreached).
  Mat grad(Var<Scalar> v) const {
    const Node &n = nodes_.at(v.id());
    if (n.grad.size() == 0) return Mat::Zero(n.value.rows(), n.value.cols());
    return n.grad;
  }

  void Accumulate(int id, const Mat &g) {
    Node &n = nodes_[id];
    if (!n.requires_grad) return;
    if (n.grad.size() == 0)
      n.grad = g;
    else
      n.grad += g;
  }

  /// Reverse sweep from a 1x1 output. Returns the gradient of every
  /// parameter leaf recorded in this graph. May be called repeatedly.
  GradientMap<Scalar> Backward(Var<Scalar> output) {
    const Node &out = nodes_.at(output.id());
    if (out.value.rows() != 1 || out.value.cols() != 1) {
      std::ostringstream os;
      os << "backward: output node " << output.id() << " (" << out.op << ") is "
         << out.value.rows() << "x" << out.value.cols() << ", expected a scalar";
      throw ShapeError(os.str());
    }
    for (Node &n : nodes_) n.grad.resize(0, 0);
    nodes_[output.id()].grad = Mat::Ones(1, 1);
    for (int i = output.id(); i >= 0; --i) {
      Node &n = nodes_[i];
      if (!n.requires_grad || n.grad.size() == 0 || !n.backward) continue;
      // Closures only write to lower-numbered nodes, so n.grad stays put.
      n.backward(*this, n.grad);
    }
    GradientMap<Scalar> grads;
    for (const auto &[param, id] : param_nodes_) {
      const Node &n = nodes_[id];
      grads.emplace(param, n.grad.size() ? n.grad : Mat::Zero(n.value.rows(), n.value.cols()));
    }
    return grads;
  }

  [[noreturn]] void ShapeFail(const std::string &op, const std::string &detail) const {
    std::ostringstream os;
    os << "shape mismatch at node " << nodes_.size() << " (" << op << "): " << detail;
    throw ShapeError(os.str());
  }

 private:
  struct Node {
    std::string op;
    Mat value;
    Mat grad;
    bool requires_grad = false;
    const Parameter<Scalar> *param = nullptr;
    BackwardFn backward;
  };

  Var<Scalar> Push(std::string op, Mat value, bool rg, const Parameter<Scalar> *p,
                   BackwardFn fn) {
    Node n;
    n.op = std::move(op);
    n.value = std::move(value);
    n.requires_grad = rg;
    n.param = p;
    n.backward = std::move(fn);
    nodes_.push_back(std::move(n));
    return Var<Scalar>(this, static_cast<int>(nodes_.size()) - 1);
  }

  std::vector<Node> nodes_;
  std::unordered_map<const Parameter<Scalar> *, int> param_nodes_;
};

namespace internal {

template <typename Scalar>
std::string Dims(const Matrix<Scalar> &m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

template <typename Scalar>
Graph<Scalar> &SameGraph(const char *op, Var<Scalar> a, Var<Scalar> b) {
  if (!a.valid() || a.graph() != b.graph())
    throw ShapeError(std::string(op) + ": operands belong to different graphs");
  return *a.graph();
}

}  // namespace internal

// ---------------------------------------------------------------------------
// Primitives.

template <typename Scalar>
Var<Scalar> matmul(Var<Scalar> a, Var<Scalar> b) {
  Graph<Scalar> &g = internal::SameGraph("matmul", a, b);
  const auto &av = a.value();
  const auto &bv = b.value();
  if (av.cols() != bv.rows())
    g.ShapeFail("matmul", internal::Dims(av) + " * " + internal::Dims(bv));
  Matrix<Scalar> out = av * bv;
  int ia = a.id(), ib = b.id();
  return g.Record("matmul", std::move(out), {ia, ib},
                  [ia, ib](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    if (g.requires_grad(ia)) g.Accumulate(ia, up * g.value(ib).transpose());
                    if (g.requires_grad(ib)) g.Accumulate(ib, g.value(ia).transpose() * up);
                  });
}

template <typename Scalar>
Var<Scalar> operator+(Var<Scalar> a, Var<Scalar> b) {
  Graph<Scalar> &g = internal::SameGraph("add", a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    g.ShapeFail("add", internal::Dims(a.value()) + " + " + internal::Dims(b.value()));
  Matrix<Scalar> out = a.value() + b.value();
  int ia = a.id(), ib = b.id();
  return g.Record("add", std::move(out), {ia, ib},
                  [ia, ib](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    g.Accumulate(ia, up);
                    g.Accumulate(ib, up);
                  });
}

template <typename Scalar>
Var<Scalar> operator-(Var<Scalar> a, Var<Scalar> b) {
  Graph<Scalar> &g = internal::SameGraph("sub", a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    g.ShapeFail("sub", internal::Dims(a.value()) + " - " + internal::Dims(b.value()));
  Matrix<Scalar> out = a.value() - b.value();
  int ia = a.id(), ib = b.id();
  return g.Record("sub", std::move(out), {ia, ib},
                  [ia, ib](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    g.Accumulate(ia, up);
                    g.Accumulate(ib, -up);
                  });
}

// Elementwise product.
template <typename Scalar>
Var<Scalar> mul(Var<Scalar> a, Var<Scalar> b) {
  Graph<Scalar> &g = internal::SameGraph("mul", a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    g.ShapeFail("mul", internal::Dims(a.value()) + " .* " + internal::Dims(b.value()));
  Matrix<Scalar> out = a.value().cwiseProduct(b.value());
  int ia = a.id(), ib = b.id();
  return g.Record("mul", std::move(out), {ia, ib},
                  [ia, ib](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    if (g.requires_grad(ia)) g.Accumulate(ia, up.cwiseProduct(g.value(ib)));
                    if (g.requires_grad(ib)) g.Accumulate(ib, up.cwiseProduct(g.value(ia)));
                  });
}

template <typename Scalar>
Var<Scalar> scale(Var<Scalar> a, std::type_identity_t<Scalar> s) {
  Graph<Scalar> &g = *a.graph();
  Matrix<Scalar> out = a.value() * s;
  int ia = a.id();
  return g.Record("scale", std::move(out), {ia},
                  [ia, s](Graph<Scalar> &g, const Matrix<Scalar> &up) { g.Accumulate(ia, up * s); });
}

template <typename Scalar>
Var<Scalar> operator*(std::type_identity_t<Scalar> s, Var<Scalar> a) {
  return scale(a, s);
}

template <typename Scalar>
Var<Scalar> operator-(Var<Scalar> a) {
  return scale(a, Scalar(-1));
}

template <typename Scalar>
Var<Scalar> add_scalar(Var<Scalar> a, std::type_identity_t<Scalar> s) {
  Graph<Scalar> &g = *a.graph();
  Matrix<Scalar> out = a.value().array() + s;
  int ia = a.id();
  return g.Record("add_scalar", std::move(out), {ia},
                  [ia](Graph<Scalar> &g, const Matrix<Scalar> &up) { g.Accumulate(ia, up); });
}

// x (B x n) plus a 1 x n row added to every row.
template <typename Scalar>
Var<Scalar> add_bias(Var<Scalar> x, Var<Scalar> bias) {
  Graph<Scalar> &g = internal::SameGraph("add_bias", x, bias);
  if (bias.rows() != 1 || bias.cols() != x.cols())
    g.ShapeFail("add_bias", internal::Dims(x.value()) + " + row " + internal::Dims(bias.value()));
  Matrix<Scalar> out = x.value().rowwise() + bias.value().row(0);
  int ix = x.id(), ib = bias.id();
  return g.Record("add_bias", std::move(out), {ix, ib},
                  [ix, ib](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    g.Accumulate(ix, up);
                    if (g.requires_grad(ib)) g.Accumulate(ib, up.colwise().sum());
                  });
}

// Repeats a 1 x n row `rows` times.
template <typename Scalar>
Var<Scalar> broadcast_rows(Var<Scalar> v, Index rows) {
  Graph<Scalar> &g = *v.graph();
  if (v.rows() != 1) g.ShapeFail("broadcast_rows", "input is " + internal::Dims(v.value()));
  Matrix<Scalar> out = v.value().replicate(rows, 1);
  int iv = v.id();
  return g.Record("broadcast_rows", std::move(out), {iv},
                  [iv](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    g.Accumulate(iv, up.colwise().sum());
                  });
}

// Leaky-ReLU; at exactly 0 the value is 0 and the derivative is 1.
template <typename Scalar>
Var<Scalar> leaky_relu(Var<Scalar> x, std::type_identity_t<Scalar> slope = Scalar(0.2)) {
  Graph<Scalar> &g = *x.graph();
  Matrix<Scalar> out = x.value().unaryExpr([slope](Scalar v) { return v >= 0 ? v : slope * v; });
  int ix = x.id();
  return g.Record("leaky_relu", std::move(out), {ix},
                  [ix, slope](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    Matrix<Scalar> d = g.value(ix).unaryExpr(
                        [slope](Scalar v) { return v >= 0 ? Scalar(1) : slope; });
                    g.Accumulate(ix, up.cwiseProduct(d));
                  });
}

template <typename Scalar>
Var<Scalar> tanh(Var<Scalar> x) {
  Graph<Scalar> &g = *x.graph();
  Matrix<Scalar> out = x.value().array().tanh();
  int ix = x.id();
  int iy = static_cast<int>(g.size());
  return g.Record("tanh", std::move(out), {ix},
                  [ix, iy](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    const auto &y = g.value(iy);
                    g.Accumulate(ix, (up.array() * (Scalar(1) - y.array().square())).matrix());
                  });
}

template <typename Scalar>
Var<Scalar> exp(Var<Scalar> x) {
  Graph<Scalar> &g = *x.graph();
  Matrix<Scalar> out = x.value().array().exp();
  int ix = x.id();
  int iy = static_cast<int>(g.size());
  return g.Record("exp", std::move(out), {ix},
                  [ix, iy](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    g.Accumulate(ix, up.cwiseProduct(g.value(iy)));
                  });
}

template <typename Scalar>
Var<Scalar> log(Var<Scalar> x) {
  Graph<Scalar> &g = *x.graph();
  Matrix<Scalar> out = x.value().array().log();
  int ix = x.id();
  return g.Record("log", std::move(out), {ix},
                  [ix](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    g.Accumulate(ix, up.cwiseQuotient(g.value(ix)));
                  });
}

template <typename Scalar>
Var<Scalar> square(Var<Scalar> x) {
  Graph<Scalar> &g = *x.graph();
  Matrix<Scalar> out = x.value().array().square();
  int ix = x.id();
  return g.Record("square", std::move(out), {ix},
                  [ix](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    g.Accumulate(ix, Scalar(2) * up.cwiseProduct(g.value(ix)));
                  });
}

// log(1 + exp(x)), evaluated without overflow.
template <typename Scalar>
Var<Scalar> softplus(Var<Scalar> x) {
  Graph<Scalar> &g = *x.graph();
  Matrix<Scalar> out = x.value().unaryExpr([](Scalar v) {
    return std::max(v, Scalar(0)) + std::log1p(std::exp(-std::abs(v)));
  });
  int ix = x.id();
  return g.Record("softplus", std::move(out), {ix},
                  [ix](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    Matrix<Scalar> s = g.value(ix).unaryExpr([](Scalar v) {
                      return v >= 0 ? Scalar(1) / (Scalar(1) + std::exp(-v))
                                    : std::exp(v) / (Scalar(1) + std::exp(v));
                    });
                    g.Accumulate(ix, up.cwiseProduct(s));
                  });
}

// Elementwise clamp to [lo, hi]; zero gradient where the bound is active.
template <typename Scalar>
Var<Scalar> clamp(Var<Scalar> x, std::type_identity_t<Scalar> lo,
                  std::type_identity_t<Scalar> hi) {
  Graph<Scalar> &g = *x.graph();
  Matrix<Scalar> out = x.value().cwiseMax(lo).cwiseMin(hi);
  int ix = x.id();
  return g.Record("clamp", std::move(out), {ix},
                  [ix, lo, hi](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    Matrix<Scalar> d = g.value(ix).unaryExpr(
                        [lo, hi](Scalar v) { return (v < lo || v > hi) ? Scalar(0) : Scalar(1); });
                    g.Accumulate(ix, up.cwiseProduct(d));
                  });
}

template <typename Scalar>
Var<Scalar> sum(Var<Scalar> x) {
  Graph<Scalar> &g = *x.graph();
  Matrix<Scalar> out(1, 1);
  out(0, 0) = x.value().sum();
  int ix = x.id();
  Index r = x.rows(), c = x.cols();
  return g.Record("sum", std::move(out), {ix},
                  [ix, r, c](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    g.Accumulate(ix, Matrix<Scalar>::Constant(r, c, up(0, 0)));
                  });
}

template <typename Scalar>
Var<Scalar> mean(Var<Scalar> x) {
  Graph<Scalar> &g = *x.graph();
  if (x.value().size() == 0) g.ShapeFail("mean", "empty input");
  Matrix<Scalar> out(1, 1);
  out(0, 0) = x.value().mean();
  int ix = x.id();
  Index r = x.rows(), c = x.cols();
  return g.Record("mean", std::move(out), {ix},
                  [ix, r, c](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    g.Accumulate(ix, Matrix<Scalar>::Constant(r, c, up(0, 0) / Scalar(r * c)));
                  });
}

// [a | b] along columns.
template <typename Scalar>
Var<Scalar> concat_cols(Var<Scalar> a, Var<Scalar> b) {
  Graph<Scalar> &g = internal::SameGraph("concat", a, b);
  if (a.rows() != b.rows())
    g.ShapeFail("concat", internal::Dims(a.value()) + " | " + internal::Dims(b.value()));
  Index ca = a.cols(), cb = b.cols();
  Matrix<Scalar> out(a.rows(), ca + cb);
  out << a.value(), b.value();
  int ia = a.id(), ib = b.id();
  return g.Record("concat", std::move(out), {ia, ib},
                  [ia, ib, ca, cb](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    g.Accumulate(ia, up.leftCols(ca));
                    g.Accumulate(ib, up.rightCols(cb));
                  });
}

/// Geometry of a 1-D convolution along the feature axis.
struct Conv1dShape {
  int in_channels = 1;
  int length = 1;
  int out_channels = 1;
  int kernel = 1;
  int stride = 1;
  int padding = 0;

  int out_length() const { return (length + 2 * padding - kernel) / stride + 1; }
  bool valid() const {
    return in_channels > 0 && length > 0 && out_channels > 0 && kernel > 0 && stride > 0 &&
           padding >= 0 && length + 2 * padding >= kernel;
  }
};

namespace internal {

// (B * Lout) x (Cin * K) patch matrix with zero padding.
template <typename Scalar>
Matrix<Scalar> Im2Col(const Matrix<Scalar> &x, const Conv1dShape &s) {
  const Index batch = x.rows();
  const int lout = s.out_length();
  Matrix<Scalar> cols = Matrix<Scalar>::Zero(batch * lout, s.in_channels * s.kernel);
  for (Index b = 0; b < batch; ++b) {
    for (int t = 0; t < lout; ++t) {
      for (int c = 0; c < s.in_channels; ++c) {
        for (int k = 0; k < s.kernel; ++k) {
          int l = t * s.stride + k - s.padding;
          if (l >= 0 && l < s.length) cols(b * lout + t, c * s.kernel + k) = x(b, c * s.length + l);
        }
      }
    }
  }
  return cols;
}

}  // namespace internal

/// 1-D convolution. x: B x (Cin * L), weight: Cout x (Cin * K), bias: 1 x Cout.
/// Output: B x (Cout * Lout), channel-major.
template <typename Scalar>
Var<Scalar> conv1d(Var<Scalar> x, Var<Scalar> weight, Var<Scalar> bias, const Conv1dShape &s) {
  Graph<Scalar> &g = internal::SameGraph("conv1d", x, weight);
  if (!s.valid()) g.ShapeFail("conv1d", "invalid geometry");
  if (x.cols() != s.in_channels * s.length)
    g.ShapeFail("conv1d", "input " + internal::Dims(x.value()) + " vs Cin*L = " +
                              std::to_string(s.in_channels * s.length));
  if (weight.rows() != s.out_channels || weight.cols() != s.in_channels * s.kernel)
    g.ShapeFail("conv1d", "weight " + internal::Dims(weight.value()));
  if (bias.rows() != 1 || bias.cols() != s.out_channels)
    g.ShapeFail("conv1d", "bias " + internal::Dims(bias.value()));
  const Index batch = x.rows();
  const int lout = s.out_length();
  Matrix<Scalar> cols = internal::Im2Col(x.value(), s);
  Matrix<Scalar> prod = cols * weight.value().transpose();  // (B*Lout) x Cout
  Matrix<Scalar> out(batch, s.out_channels * lout);
  const auto &bv = bias.value();
  for (Index b = 0; b < batch; ++b)
    for (int o = 0; o < s.out_channels; ++o)
      for (int t = 0; t < lout; ++t) out(b, o * lout + t) = prod(b * lout + t, o) + bv(0, o);

  int ix = x.id(), iw = weight.id(), ib = bias.id();
  return g.Record(
      "conv1d", std::move(out), {ix, iw, ib},
      [ix, iw, ib, s, batch, lout](Graph<Scalar> &g, const Matrix<Scalar> &up) {
        Matrix<Scalar> dprod(batch * lout, s.out_channels);
        for (Index b = 0; b < batch; ++b)
          for (int o = 0; o < s.out_channels; ++o)
            for (int t = 0; t < lout; ++t) dprod(b * lout + t, o) = up(b, o * lout + t);
        if (g.requires_grad(ib)) g.Accumulate(ib, dprod.colwise().sum());
        if (g.requires_grad(iw)) {
          Matrix<Scalar> cols = internal::Im2Col(g.value(ix), s);
          g.Accumulate(iw, dprod.transpose() * cols);
        }
        if (g.requires_grad(ix)) {
          Matrix<Scalar> dcols = dprod * g.value(iw);
          Matrix<Scalar> dx = Matrix<Scalar>::Zero(batch, s.in_channels * s.length);
          for (Index b = 0; b < batch; ++b)
            for (int t = 0; t < lout; ++t)
              for (int c = 0; c < s.in_channels; ++c)
                for (int k = 0; k < s.kernel; ++k) {
                  int l = t * s.stride + k - s.padding;
                  if (l >= 0 && l < s.length)
                    dx(b, c * s.length + l) += dcols(b * lout + t, c * s.kernel + k);
                }
          g.Accumulate(ix, dx);
        }
      });
}

// Nearest-neighbour upsampling of each channel by `factor`.
template <typename Scalar>
Var<Scalar> upsample(Var<Scalar> x, int channels, int factor) {
  Graph<Scalar> &g = *x.graph();
  if (channels <= 0 || factor <= 0 || x.cols() % channels != 0)
    g.ShapeFail("upsample", internal::Dims(x.value()) + " with " + std::to_string(channels) +
                                " channels");
  const int length = static_cast<int>(x.cols() / channels);
  const Index batch = x.rows();
  Matrix<Scalar> out(batch, x.cols() * factor);
  const auto &xv = x.value();
  for (Index b = 0; b < batch; ++b)
    for (int c = 0; c < channels; ++c)
      for (int l = 0; l < length * factor; ++l)
        out(b, c * length * factor + l) = xv(b, c * length + l / factor);
  int ix = x.id();
  return g.Record("upsample", std::move(out), {ix},
                  [ix, channels, factor, length, batch](Graph<Scalar> &g, const Matrix<Scalar> &up) {
                    Matrix<Scalar> dx = Matrix<Scalar>::Zero(batch, channels * length);
                    for (Index b = 0; b < batch; ++b)
                      for (int c = 0; c < channels; ++c)
                        for (int l = 0; l < length * factor; ++l)
                          dx(b, c * length + l / factor) += up(b, c * length * factor + l);
                    g.Accumulate(ix, dx);
                  });
}

}  // namespace vawgan

#endif  // VAWGAN_NUMERICS_GRAPH_H_
