// vawgan/training/optimizer.h

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

#ifndef VAWGAN_TRAINING_OPTIMIZER_H_
#define VAWGAN_TRAINING_OPTIMIZER_H_

#include <cmath>
#include <span>
#include <vector>

#include "vawgan/errors.h"
#include "vawgan/numerics/graph.h"

namespace vawgan {

// Per-parameter accumulators, aligned with the parameter list the optimizer
// is stepped with. The list must be the same (same order) on every step.
template <typename Scalar>
struct OptimizerState {
  std::vector<Matrix<Scalar>> first;
  std::vector<Matrix<Scalar>> second;
  long long steps = 0;

  void Bind(std::span<Parameter<Scalar> *const> params) {
    if (!first.empty()) {
      if (first.size() != params.size()) throw ConfigError("optimizer: parameter list changed");
      return;
    }
    for (Parameter<Scalar> *p : params) {
      first.push_back(Matrix<Scalar>::Zero(p->value.rows(), p->value.cols()));
      second.push_back(Matrix<Scalar>::Zero(p->value.rows(), p->value.cols()));
    }
  }
};

namespace internal {
template <typename Scalar>
const Matrix<Scalar> *FindGrad(const GradientMap<Scalar> &grads, const Parameter<Scalar> *p) {
  auto it = grads.find(p);
  return it == grads.end() ? nullptr : &it->second;
}
}  // namespace internal

/// Adaptive-moment rule, used for the encoder and generator.
template <typename Scalar>
class Adam {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  // Parameters without an entry in `grads` are treated as zero-gradient.
  void Step(std::span<Parameter<Scalar> *const> params, const GradientMap<Scalar> &grads) {
    state_.Bind(params);
    ++state_.steps;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(state_.steps));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(state_.steps));
    const Scalar b1 = static_cast<Scalar>(beta1_), b2 = static_cast<Scalar>(beta2_);
    const Scalar step = static_cast<Scalar>(lr_ / c1);
    const Scalar inv_c2 = static_cast<Scalar>(1.0 / c2);
    const Scalar eps = static_cast<Scalar>(eps_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      const Matrix<Scalar> *g = internal::FindGrad(grads, params[i]);
      Matrix<Scalar> &m = state_.first[i];
      Matrix<Scalar> &v = state_.second[i];
      if (g) {
        m = b1 * m + (Scalar(1) - b1) * *g;
        v = b2 * v + (Scalar(1) - b2) * g->cwiseProduct(*g);
      } else {
        m *= b1;
        v *= b2;
      }
      params[i]->value.array() -=
          step * m.array() / ((v.array() * inv_c2).sqrt() + eps);
    }
  }

  double lr() const { return lr_; }
  const OptimizerState<Scalar> &state() const { return state_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  OptimizerState<Scalar> state_;
};

/// Momentum-free adaptive rule (RMSProp), used for the critic.
template <typename Scalar>
class RmsProp {
 public:
  explicit RmsProp(double lr, double decay = 0.99, double eps = 1e-8)
      : lr_(lr), decay_(decay), eps_(eps) {}

  void Step(std::span<Parameter<Scalar> *const> params, const GradientMap<Scalar> &grads) {
    state_.Bind(params);
    ++state_.steps;
    const Scalar rho = static_cast<Scalar>(decay_);
    const Scalar lr = static_cast<Scalar>(lr_);
    const Scalar eps = static_cast<Scalar>(eps_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      const Matrix<Scalar> *g = internal::FindGrad(grads, params[i]);
      Matrix<Scalar> &v = state_.second[i];
      if (!g) {
        v *= rho;
        continue;
      }
      v = rho * v + (Scalar(1) - rho) * g->cwiseProduct(*g);
      params[i]->value.array() -= lr * g->array() / (v.array().sqrt() + eps);
    }
  }

  double lr() const { return lr_; }
  const OptimizerState<Scalar> &state() const { return state_; }

 private:
  double lr_, decay_, eps_;
  OptimizerState<Scalar> state_;
};

// Clamps every scalar of every parameter to [-c, c].
template <typename Scalar>
void clip_parameters(std::span<Parameter<Scalar> *const> params, double c) {
  const Scalar lo = static_cast<Scalar>(-c), hi = static_cast<Scalar>(c);
  for (Parameter<Scalar> *p : params) p->value = p->value.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace vawgan

#endif  // VAWGAN_TRAINING_OPTIMIZER_H_
