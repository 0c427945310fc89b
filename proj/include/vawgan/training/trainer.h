// vawgan/training/trainer.h

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

#ifndef VAWGAN_TRAINING_TRAINER_H_
#define VAWGAN_TRAINING_TRAINER_H_

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "vawgan/errors.h"
#include "vawgan/features/frame-matrix.h"
#include "vawgan/model/networks.h"
#include "vawgan/objectives/objectives.h"
#include "vawgan/training/optimizer.h"
#include "vawgan/training/train-config.h"

namespace vawgan {

/// One outer iteration's inputs: independently drawn source and target
/// mini-batches plus the reparameterization noise for each.
template <typename Scalar>
struct StepBatch {
  Matrix<Scalar> x_s, x_t;
  Matrix<Scalar> eps_s, eps_t;
  int speaker_s = 0, speaker_t = 1;
};

// Rows drawn with replacement; the two corpora are never paired.
template <typename Scalar>
StepBatch<Scalar> draw_batch(const Matrix<Scalar> &source, int speaker_s, const Matrix<Scalar> &target,
                             int speaker_t, int batch_size, int z_dim, RngState &rng) {
  StepBatch<Scalar> b;
  b.speaker_s = speaker_s;
  b.speaker_t = speaker_t;
  b.x_s.resize(batch_size, source.cols());
  b.x_t.resize(batch_size, target.cols());
  for (int i = 0; i < batch_size; ++i) b.x_s.row(i) = source.row(static_cast<Index>(rng.Below(source.rows())));
  for (int i = 0; i < batch_size; ++i) b.x_t.row(i) = target.row(static_cast<Index>(rng.Below(target.rows())));
  b.eps_s = sample_standard_normal<Scalar>(rng, batch_size, z_dim);
  b.eps_t = sample_standard_normal<Scalar>(rng, batch_size, z_dim);
  return b;
}

template <typename Scalar>
struct Autoencoded {
  Var<Scalar> x_rec;
  Posterior<Scalar> post;
  Var<Scalar> z;
};

/// X' = G(mu + sigma * eps, y_speaker), with Z the drawn latent.
template <typename Scalar>
Autoencoded<Scalar> autoencode_batch(Graph<Scalar> &g, Var<Scalar> x, int speaker,
                                     const ModelParams<Scalar> &params, const Matrix<Scalar> &eps) {
  Autoencoded<Scalar> out;
  out.post = encode(g, x, params.encoder, params.arch);
  out.z = reparameterize(out.post.mu, out.post.log_var, eps);
  out.x_rec = generate(g, out.z, speaker, params.generator, params.arch);
  return out;
}

template <typename Scalar>
Autoencoded<Scalar> autoencode_batch(Graph<Scalar> &g, Var<Scalar> x, int speaker,
                                     const ModelParams<Scalar> &params, RngState &rng) {
  return autoencode_batch(g, x, speaker, params,
                          sample_standard_normal<Scalar>(rng, x.rows(), params.arch.z_dim));
}

namespace internal {

template <typename Scalar>
Var<Scalar> AdversarialTerm(Var<Scalar> real, Var<Scalar> fake, AdversarialMode mode) {
  return mode == AdversarialMode::kWasserstein ? wgan_objective(real, fake)
                                               : jsgan_objective(real, fake);
}

template <typename Scalar>
GradientMap<Scalar> Restrict(const GradientMap<Scalar> &grads,
                             const std::vector<Parameter<Scalar> *> &keep) {
  GradientMap<Scalar> out;
  for (Parameter<Scalar> *p : keep) {
    auto it = grads.find(p);
    if (it != grads.end()) out.emplace(p, it->second);
  }
  return out;
}

inline void CheckLoss(double v, const char *what) {
  if (!std::isfinite(v)) throw NumericError(std::string("non-finite ") + what);
}

}  // namespace internal

/// Gradients of one outer iteration, all taken at the same parameter point:
/// phi from (J_obs + J_lat), theta from (J_obs + alpha * J_wgan).
template <typename Scalar>
struct VaeGradients {
  GradientMap<Scalar> phi;
  GradientMap<Scalar> theta;
  LossBreakdown losses;
};

// With `adversarial` false the critic is not evaluated and J_wgan is zero.
template <typename Scalar>
VaeGradients<Scalar> compute_vae_gradients(const StepBatch<Scalar> &batch, ModelParams<Scalar> &params,
                                           double alpha, bool adversarial,
                                           AdversarialMode mode = AdversarialMode::kWasserstein) {
  Graph<Scalar> g;
  Var<Scalar> xs = g.Constant(batch.x_s, "x_s");
  Var<Scalar> xt = g.Constant(batch.x_t, "x_t");
  Autoencoded<Scalar> ae_s = autoencode_batch(g, xs, batch.speaker_s, params, batch.eps_s);
  Autoencoded<Scalar> ae_t = autoencode_batch(g, xt, batch.speaker_t, params, batch.eps_t);
  Var<Scalar> j_obs = recon_loss(xs, ae_s.x_rec) + recon_loss(xt, ae_t.x_rec);
  Var<Scalar> j_lat = kl_loss(ae_s.post.mu, ae_s.post.log_var) + kl_loss(ae_t.post.mu, ae_t.post.log_var);

  VaeGradients<Scalar> out;
  double j_adv = 0.0;
  Var<Scalar> gen_obj = j_obs;
  if (adversarial) {
    // X_{t|s} = G(Z_s, y_t)
    Var<Scalar> converted = generate(g, ae_s.z, batch.speaker_t, params.generator, params.arch);
    Var<Scalar> adv = internal::AdversarialTerm(criticize(g, xt, params.critic, params.arch),
                                                criticize(g, converted, params.critic, params.arch), mode);
    j_adv = adv.value()(0, 0);
    gen_obj = j_obs + scale(adv, static_cast<Scalar>(alpha));
  }
  out.losses = vawgan_total(j_lat.value()(0, 0), j_obs.value()(0, 0), j_adv, alpha);
  internal::CheckLoss(out.losses.j_obs, "J_obs");
  internal::CheckLoss(out.losses.j_lat, "J_lat");
  internal::CheckLoss(out.losses.j_wgan, "J_wgan");

  out.phi = internal::Restrict(g.Backward(j_obs + j_lat), params.phi());
  out.theta = internal::Restrict(g.Backward(gen_obj), params.theta());
  return out;
}

template <typename Scalar>
void apply_encoder_update(ModelParams<Scalar> &params, Adam<Scalar> &opt, const VaeGradients<Scalar> &grads) {
  auto phi = params.phi();
  opt.Step(phi, grads.phi);
}

template <typename Scalar>
void apply_generator_update(ModelParams<Scalar> &params, Adam<Scalar> &opt, const VaeGradients<Scalar> &grads) {
  auto theta = params.theta();
  opt.Step(theta, grads.theta);
}

/// One descent step on (J_obs + J_lat) w.r.t. phi only.
template <typename Scalar>
LossBreakdown encoder_step(const StepBatch<Scalar> &batch, ModelParams<Scalar> &params, Adam<Scalar> &opt,
                           double alpha, bool adversarial,
                           AdversarialMode mode = AdversarialMode::kWasserstein) {
  VaeGradients<Scalar> grads = compute_vae_gradients(batch, params, alpha, adversarial, mode);
  apply_encoder_update(params, opt, grads);
  return grads.losses;
}

/// One descent step on (J_obs + alpha * J_wgan) w.r.t. theta only.
template <typename Scalar>
LossBreakdown generator_step(const StepBatch<Scalar> &batch, ModelParams<Scalar> &params, Adam<Scalar> &opt,
                             double alpha, bool adversarial,
                             AdversarialMode mode = AdversarialMode::kWasserstein) {
  VaeGradients<Scalar> grads = compute_vae_gradients(batch, params, alpha, adversarial, mode);
  apply_generator_update(params, opt, grads);
  return grads.losses;
}

/// X_{t|s} = G(z_s, y_t) as a constant (no gradient path).
template <typename Scalar>
Matrix<Scalar> convert_latents(const Matrix<Scalar> &z_s, int target_speaker, const ModelParams<Scalar> &params) {
  Graph<Scalar> g;
  Var<Scalar> z = g.Constant(z_s, "z_s");
  return generate(g, z, target_speaker, params.generator, params.arch).value();
}

/// One ascent step of the critic on the adversarial objective, then clipping
/// (Wasserstein mode). Returns the objective before the update.
/// Touches psi only.
template <typename Scalar>
double critic_step(const Matrix<Scalar> &x_t, const Matrix<Scalar> &converted, ModelParams<Scalar> &params,
                   RmsProp<Scalar> &opt, const TrainConfig &cfg) {
  Graph<Scalar> g;
  Var<Scalar> real = criticize(g, g.Constant(x_t, "x_t"), params.critic, params.arch);
  Var<Scalar> fake = criticize(g, g.Constant(converted, "x_t|s"), params.critic, params.arch);
  Var<Scalar> obj = internal::AdversarialTerm(real, fake, cfg.adversarial);
  const double value = obj.value()(0, 0);
  internal::CheckLoss(value, "critic objective");
  auto psi = params.psi();
  // Ascent on the objective == descent on its negative.
  opt.Step(psi, g.Backward(-obj));
  if (cfg.adversarial == AdversarialMode::kWasserstein) clip_parameters<Scalar>(psi, cfg.clip_c);
  return value;
}

template <typename Scalar>
double critic_step_from_latents(const Matrix<Scalar> &x_t, const Matrix<Scalar> &z_s, int target_speaker,
                                ModelParams<Scalar> &params, RmsProp<Scalar> &opt, const TrainConfig &cfg) {
  return critic_step(x_t, convert_latents(z_s, target_speaker, params), params, opt, cfg);
}

struct TraceRecord {
  int step = 0;
  int phase = 1;
  double j_lat = 0;
  double j_obs = 0;
  double j_wgan = 0;
  bool has_wgan = false;
  double seconds = 0;
};

struct TrainTrace {
  std::vector<TraceRecord> records;

  // step,phase,j_lat,j_obs,j_wgan,seconds; j_wgan is empty in phase 1.
  std::string to_csv() const;
};

template <typename Scalar>
struct TrainHooks {
  std::function<void(int step, const ModelParams<Scalar> &)> after_critic_step;
  std::function<void(int step, const ModelParams<Scalar> &)> on_checkpoint;
  std::function<void(int step, const ModelParams<Scalar> &)> on_phase1_end;
  std::function<void(const TraceRecord &)> on_record;
};

template <typename Scalar>
struct TrainResult {
  ModelParams<Scalar> params;
  TrainTrace trace;
};

struct TrainOptions {
  // Writes 0 into the seconds column so traces are byte-reproducible.
  bool deterministic = false;
};

/// Two phases: phase1_steps of VAE-only updates (alpha = 0, no critic), then
/// phase2_steps of [n_critic critic steps, encoder and generator updates].
/// Corpora must already be normalized.
template <typename Scalar>
TrainResult<Scalar> train(const FrameMatrix &source, const FrameMatrix &target, const TrainConfig &cfg,
                          const TrainHooks<Scalar> &hooks = {}, TrainOptions opts = {}) {
  cfg.Validate();
  if (source.num_frames() == 0 || target.num_frames() == 0) throw ConfigError("train: empty corpus");
  if (source.speaker_id == target.speaker_id) throw ConfigError("train: source and target share a speaker id");
  if (source.dim() != cfg.arch.dim || target.dim() != cfg.arch.dim)
    throw ConfigError("train: corpus dim does not match arch dim " + std::to_string(cfg.arch.dim));
  if (std::max(source.speaker_id, target.speaker_id) >= cfg.arch.num_speakers)
    throw ConfigError("train: speaker id exceeds num_speakers");

  const Matrix<Scalar> xs = source.frames.template cast<Scalar>();
  const Matrix<Scalar> xt = target.frames.template cast<Scalar>();
  RngState rng(cfg.seed);
  TrainResult<Scalar> result{init_model<Scalar>(cfg.arch, rng, cfg.clip_c), {}};
  ModelParams<Scalar> &params = result.params;
  Adam<Scalar> enc_opt(cfg.lr_encoder), gen_opt(cfg.lr_generator);
  RmsProp<Scalar> critic_opt(cfg.lr_critic);

  const auto start = std::chrono::steady_clock::now();
  auto record = [&](int step, int phase, const LossBreakdown &l, bool has_wgan) {
    TraceRecord r;
    r.step = step;
    r.phase = phase;
    r.j_lat = l.j_lat;
    r.j_obs = l.j_obs;
    r.j_wgan = l.j_wgan;
    r.has_wgan = has_wgan;
    if (!opts.deterministic)
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.trace.records.push_back(r);
    if (hooks.on_record) hooks.on_record(r);
  };
  auto maybe_checkpoint = [&](int step) {
    if (cfg.checkpoint_every > 0 && step % cfg.checkpoint_every == 0 && hooks.on_checkpoint)
      hooks.on_checkpoint(step, params);
  };

  const int z_dim = cfg.arch.z_dim;
  int step = 0;
  for (int i = 0; i < cfg.phase1_steps; ++i) {
    ++step;
    StepBatch<Scalar> batch = draw_batch(xs, source.speaker_id, xt, target.speaker_id, cfg.batch_size, z_dim, rng);
    VaeGradients<Scalar> grads = compute_vae_gradients(batch, params, 0.0, false);
    apply_encoder_update(params, enc_opt, grads);
    apply_generator_update(params, gen_opt, grads);
    record(step, 1, grads.losses, false);
    maybe_checkpoint(step);
  }
  if (hooks.on_phase1_end) hooks.on_phase1_end(step, params);

  for (int i = 0; i < cfg.phase2_steps; ++i) {
    ++step;
    StepBatch<Scalar> batch = draw_batch(xs, source.speaker_id, xt, target.speaker_id, cfg.batch_size, z_dim, rng);
    Matrix<Scalar> converted;
    {
      Graph<Scalar> g;
      Posterior<Scalar> post = encode(g, g.Constant(batch.x_s), params.encoder, params.arch);
      Matrix<Scalar> z_s = reparameterize(post.mu, post.log_var, batch.eps_s).value();
      converted = convert_latents(z_s, batch.speaker_t, params);
    }
    for (int k = 0; k < cfg.n_critic; ++k) {
      critic_step(batch.x_t, converted, params, critic_opt, cfg);
      if (hooks.after_critic_step) hooks.after_critic_step(step, params);
    }
    VaeGradients<Scalar> grads =
        compute_vae_gradients(batch, params, cfg.alpha, true, cfg.adversarial);
    apply_encoder_update(params, enc_opt, grads);
    apply_generator_update(params, gen_opt, grads);
    record(step, 2, grads.losses, true);
    maybe_checkpoint(step);
  }
  return result;
}

}  // namespace vawgan

#endif  // VAWGAN_TRAINING_TRAINER_H_
