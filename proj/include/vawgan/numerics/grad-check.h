// vawgan/numerics/grad-check.h

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

#ifndef VAWGAN_NUMERICS_GRAD_CHECK_H_
#define VAWGAN_NUMERICS_GRAD_CHECK_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>

#include "vawgan/errors.h"
#include "vawgan/numerics/graph.h"

namespace vawgan {

// Builds a scalar-valued computation on the given graph.
template <typename Scalar>
using ScalarFunction = std::function<Var<Scalar>(Graph<Scalar> &)>;

template <typename Scalar>
Scalar evaluate(const ScalarFunction<Scalar> &fn) {
  Graph<Scalar> g;
  Var<Scalar> out = fn(g);
  return out.value()(0, 0);
}

/// Compares reverse-mode gradients against central differences for every
/// scalar in `params`. Returns max |analytic - numeric| / max(1, |analytic|).
/// The parameters are perturbed in place and restored before returning.
template <typename Scalar>
double grad_check(const ScalarFunction<Scalar> &fn, std::span<Parameter<Scalar> *const> params,
                  double step) {
  if (!(step > 0)) throw ConfigError("grad_check: step must be positive");
  GradientMap<Scalar> grads;
  {
    Graph<Scalar> g;
    Var<Scalar> out = fn(g);
    grads = g.Backward(out);
  }
  double worst = 0.0;
  for (Parameter<Scalar> *p : params) {
    auto it = grads.find(p);
    for (Index i = 0; i < p->value.size(); ++i) {
      double analytic = it == grads.end() ? 0.0 : static_cast<double>(it->second.data()[i]);
      Scalar &slot = p->value.data()[i];
      const Scalar saved = slot;
      slot = saved + static_cast<Scalar>(step);
      double up = static_cast<double>(evaluate(fn));
      slot = saved - static_cast<Scalar>(step);
      double down = static_cast<double>(evaluate(fn));
      slot = saved;
      double numeric = (up - down) / (2.0 * step);
      double err = std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace vawgan

#endif  // VAWGAN_NUMERICS_GRAD_CHECK_H_
