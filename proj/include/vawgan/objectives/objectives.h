// vawgan/objectives/objectives.h

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

#ifndef VAWGAN_OBJECTIVES_OBJECTIVES_H_
#define VAWGAN_OBJECTIVES_OBJECTIVES_H_

#include "vawgan/errors.h"
#include "vawgan/numerics/graph.h"

namespace vawgan {

// All losses are batch means of per-frame quantities. Values are minimized,
// except the critic's, which is maximized (trained as minimizing its
// negative).

/// KL(N(mu, diag(exp(log_var))) || N(0, I)), averaged over rows.
template <typename Scalar>
Var<Scalar> kl_loss(Var<Scalar> mu, Var<Scalar> log_var) {
  Graph<Scalar> &g = *mu.graph();
  if (mu.rows() != log_var.rows() || mu.cols() != log_var.cols())
    g.ShapeFail("kl_loss", "mu and log_var differ in shape");
  const Scalar batch = static_cast<Scalar>(mu.rows());
  Var<Scalar> per = square(mu) + exp(log_var) - log_var;
  return add_scalar(scale(sum(per), Scalar(0.5) / batch), Scalar(-0.5) * static_cast<Scalar>(mu.cols()));
}

/// 0.5 * ||x - x_hat||^2 averaged over rows; the (D/2) log 2pi constant of
/// the unit-variance Gaussian likelihood is left out.
template <typename Scalar>
Var<Scalar> recon_loss(Var<Scalar> x, Var<Scalar> x_hat) {
  const Scalar batch = static_cast<Scalar>(x.rows());
  return scale(sum(square(x - x_hat)), Scalar(0.5) / batch);
}

/// mean D(real) - mean D(fake).
template <typename Scalar>
Var<Scalar> wgan_objective(Var<Scalar> real_scores, Var<Scalar> fake_scores) {
  if (real_scores.value().size() == 0 || fake_scores.value().size() == 0)
    real_scores.graph()->ShapeFail("wgan_objective", "empty score batch");
  return mean(real_scores) - mean(fake_scores);
}

/// E[log sigmoid(real)] + E[log(1 - sigmoid(fake))].
template <typename Scalar>
Var<Scalar> jsgan_objective(Var<Scalar> real_logits, Var<Scalar> fake_logits) {
  if (real_logits.value().size() == 0 || fake_logits.value().size() == 0)
    real_logits.graph()->ShapeFail("jsgan_objective", "empty logit batch");
  // log sigmoid(a) = -softplus(-a); log(1 - sigmoid(a)) = -softplus(a).
  return -(mean(softplus(-real_logits)) + mean(softplus(fake_logits)));
}

struct LossBreakdown {
  double j_lat = 0;
  double j_obs = 0;
  double j_wgan = 0;
  double alpha = 0;
  // j_obs + j_lat + alpha * j_wgan
  double total = 0;

  // What each parameter set optimizes.
  double encoder_objective() const { return j_obs + j_lat; }          // minimized by phi
  double generator_objective() const { return j_obs + alpha * j_wgan; }  // minimized by theta
  double critic_objective() const { return j_wgan; }                   // maximized by psi
};

inline LossBreakdown vawgan_total(double j_lat, double j_obs, double j_wgan, double alpha) {
  if (!(alpha >= 0)) throw ConfigError("vawgan_total: alpha must be >= 0");
  LossBreakdown b;
  b.j_lat = j_lat;
  b.j_obs = j_obs;
  b.j_wgan = j_wgan;
  b.alpha = alpha;
  b.total = j_obs + j_lat + alpha * j_wgan;
  return b;
}

}  // namespace vawgan

#endif  // VAWGAN_OBJECTIVES_OBJECTIVES_H_
