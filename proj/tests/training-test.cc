// tests/training-test.cc

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
#include <filesystem>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "test-util.h"
#include "vawgan/errors.h"
#include "vawgan/features/binary-io.h"
#include "vawgan/training/checkpoint.h"
#include "vawgan/training/train-config.h"
#include "vawgan/training/trainer.h"

namespace vawgan {
namespace {

ArchConfig SmallArch() {
  ArchConfig a;
  a.dim = 8;
  a.z_dim = 4;
  a.embed_dim = 3;
  a.enc_channels = {3, 4};
  a.enc_strides = {1, 2};
  a.enc_kernel = 3;
  a.gen_channels = {4, 2};
  a.gen_kernel = 3;
  a.critic_channels = {3, 3};
  a.critic_strides = {1, 2};
  a.critic_kernel = 3;
  return a;
}

TrainConfig SmallConfig() {
  TrainConfig c;
  c.arch = SmallArch();
  c.batch_size = 6;
  c.phase1_steps = 4;
  c.phase2_steps = 3;
  c.n_critic = 2;
  return c;
}

FrameMatrix Corpus(RngState &rng, int speaker, Index n, Index dim) {
  FrameMatrix f;
  f.speaker_id = speaker;
  f.frames = sample_uniform<double>(rng, n, dim, -1.0, 1.0);
  return f;
}

struct Fixture {
  TrainConfig cfg = SmallConfig();
  RngState rng{7};
  ModelParams<double> params = init_model<double>(cfg.arch, rng, cfg.clip_c);
  Matrix<double> xs = sample_uniform<double>(rng, 20, 8, -1.0, 1.0);
  Matrix<double> xt = sample_uniform<double>(rng, 13, 8, -1.0, 1.0);
  StepBatch<double> batch = draw_batch(xs, 0, xt, 1, 6, 4, rng);
};

std::vector<Matrix<double>> Snapshot(const std::vector<Parameter<double> *> &ps) {
  std::vector<Matrix<double>> out;
  for (auto *p : ps) out.push_back(p->value);
  return out;
}

bool Same(const std::vector<Parameter<double> *> &ps, const std::vector<Matrix<double>> &snap) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!(ps[i]->value == snap[i])) return false;
  return true;
}

TEST(DrawBatch, ShapesAndRowsFromCorpus) {
  Fixture f;
  StepBatch<double> b = draw_batch(f.xs, 0, f.xt, 1, 50, 4, f.rng);
  EXPECT_EQ(b.x_s.rows(), 50);
  EXPECT_EQ(b.x_t.rows(), 50);  // more than 13: sampled with replacement
  EXPECT_EQ(b.eps_s.cols(), 4);
  for (Index r = 0; r < 50; ++r) {
    bool found = false;
    for (Index i = 0; i < f.xt.rows() && !found; ++i) found = b.x_t.row(r) == f.xt.row(i);
    EXPECT_TRUE(found);
  }
}

TEST(Autoencode, ZeroNoiseDecodesMean) {
  Fixture f;
  Graph<double> g;
  Var<double> x = g.Constant(f.batch.x_s);
  Autoencoded<double> ae = autoencode_batch(g, x, 0, f.params, Matrix<double>(Matrix<double>::Zero(6, 4)));
  Var<double> direct = generate(g, ae.post.mu, 0, f.params.generator, f.params.arch);
  EXPECT_TRUE(ae.x_rec.value() == direct.value());
  EXPECT_EQ(ae.x_rec.rows(), 6);
  EXPECT_EQ(ae.x_rec.cols(), 8);
  EXPECT_EQ(ae.z.cols(), 4);
}

TEST(Autoencode, MatchesManualComposition) {
  Fixture f;
  RngState r1(55), r2(55);
  Graph<double> g1, g2;
  Autoencoded<double> ae = autoencode_batch(g1, g1.Constant(f.batch.x_s), 1, f.params, r1);
  Posterior<double> post = encode(g2, g2.Constant(f.batch.x_s), f.params.encoder, f.params.arch);
  Var<double> z = reparameterize(post.mu, post.log_var, sample_standard_normal<double>(r2, 6, 4));
  Var<double> x = generate(g2, z, 1, f.params.generator, f.params.arch);
  EXPECT_TRUE(ae.x_rec.value() == x.value());
  EXPECT_TRUE(ae.z.value() == z.value());
}

TEST(UpdateSeparation, EncoderStepTouchesPhiOnly) {
  Fixture f;
  auto theta = Snapshot(f.params.theta()), psi = Snapshot(f.params.psi()), phi = Snapshot(f.params.phi());
  Adam<double> opt(1e-3);
  encoder_step(f.batch, f.params, opt, 50.0, true);
  EXPECT_TRUE(Same(f.params.theta(), theta));
  EXPECT_TRUE(Same(f.params.psi(), psi));
  EXPECT_FALSE(Same(f.params.phi(), phi));
}

TEST(UpdateSeparation, GeneratorStepTouchesThetaOnly) {
  Fixture f;
  auto theta = Snapshot(f.params.theta()), psi = Snapshot(f.params.psi()), phi = Snapshot(f.params.phi());
  Adam<double> opt(1e-3);
  generator_step(f.batch, f.params, opt, 50.0, true);
  EXPECT_TRUE(Same(f.params.phi(), phi));
  EXPECT_TRUE(Same(f.params.psi(), psi));
  EXPECT_FALSE(Same(f.params.theta(), theta));
}

TEST(UpdateSeparation, CriticStepTouchesPsiOnly) {
  Fixture f;
  auto theta = Snapshot(f.params.theta()), psi = Snapshot(f.params.psi()), phi = Snapshot(f.params.phi());
  RmsProp<double> opt(5e-5);
  critic_step_from_latents<double>(f.batch.x_t, f.batch.eps_s, 1, f.params, opt, f.cfg);
  EXPECT_TRUE(Same(f.params.phi(), phi));
  EXPECT_TRUE(Same(f.params.theta(), theta));
  EXPECT_FALSE(Same(f.params.psi(), psi));
}

TEST(UpdateSeparation, PhiGradientCarriesNoAdversarialTerm) {
  Fixture f;
  VaeGradients<double> with = compute_vae_gradients(f.batch, f.params, 50.0, true);
  VaeGradients<double> without = compute_vae_gradients(f.batch, f.params, 0.0, false);
  for (auto *p : f.params.phi()) EXPECT_TRUE(with.phi.at(p) == without.phi.at(p)) << p->name;
  EXPECT_TRUE(with.phi.size() == f.params.phi().size());
  for (auto *p : f.params.psi()) EXPECT_EQ(with.phi.count(p), 0u);

  // The full objective J_obs + J_lat + alpha * J_wgan does depend on phi
  // through X_{t|s}; the update rule must not use that gradient.
  Graph<double> g;
  Var<double> xs = g.Constant(f.batch.x_s), xt = g.Constant(f.batch.x_t);
  Autoencoded<double> a = autoencode_batch(g, xs, 0, f.params, f.batch.eps_s);
  Autoencoded<double> b = autoencode_batch(g, xt, 1, f.params, f.batch.eps_t);
  Var<double> conv = generate(g, a.z, 1, f.params.generator, f.params.arch);
  Var<double> adv = wgan_objective(criticize(g, xt, f.params.critic, f.params.arch),
                                   criticize(g, conv, f.params.critic, f.params.arch));
  Var<double> full = recon_loss(xs, a.x_rec) + recon_loss(xt, b.x_rec) + kl_loss(a.post.mu, a.post.log_var) +
                     kl_loss(b.post.mu, b.post.log_var) + scale(adv, 50.0);
  GradientMap<double> full_grads = g.Backward(full);
  double diff = 0;
  for (auto *p : f.params.phi()) diff += (full_grads.at(p) - with.phi.at(p)).cwiseAbs().sum();
  EXPECT_GT(diff, 0.0);
}

TEST(UpdateSeparation, AlphaZeroGeneratorIsPureVae) {
  Fixture f;
  VaeGradients<double> adv0 = compute_vae_gradients(f.batch, f.params, 0.0, true);
  VaeGradients<double> vae = compute_vae_gradients(f.batch, f.params, 0.0, false);
  for (auto *p : f.params.theta()) EXPECT_TRUE(adv0.theta.at(p) == vae.theta.at(p)) << p->name;
}

TEST(UpdateSeparation, TargetEmbeddingGetsAdversarialGradient) {
  Fixture f;
  VaeGradients<double> adv = compute_vae_gradients(f.batch, f.params, 50.0, true);
  VaeGradients<double> vae = compute_vae_gradients(f.batch, f.params, 0.0, true);
  const Parameter<double> *emb = &f.params.generator.embedding;
  Matrix<double> delta = adv.theta.at(emb) - vae.theta.at(emb);
  EXPECT_GT(delta.row(1).cwiseAbs().maxCoeff(), 0.0);
  // The source row only appears in reconstructions, never in X_{t|s}.
  EXPECT_EQ(delta.row(0).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Optimizers, ZeroLearningRateLeavesParameters) {
  Fixture f;
  auto all = Snapshot(f.params.all());
  Adam<double> enc(0.0), gen(0.0);
  encoder_step(f.batch, f.params, enc, 50.0, true);
  generator_step(f.batch, f.params, gen, 50.0, true);
  EXPECT_TRUE(Same(f.params.all(), all));

  RmsProp<double> critic(0.0);
  // Push one weight outside the clip range: only clamping may change it.
  f.params.critic.out.weight.value(0, 0) = 0.5;
  auto before = Snapshot(f.params.psi());
  critic_step_from_latents<double>(f.batch.x_t, f.batch.eps_s, 1, f.params, critic, f.cfg);
  auto psi = f.params.psi();
  for (std::size_t i = 0; i < psi.size(); ++i) {
    Matrix<double> clamped = before[i].cwiseMax(-0.01).cwiseMin(0.01);
    EXPECT_TRUE(psi[i]->value == clamped) << psi[i]->name;
  }
}

TEST(CriticStep, ClipsEveryWeight) {
  Fixture f;
  RmsProp<double> opt(0.5);  // large steps to hit the bound
  for (int i = 0; i < 10; ++i) {
    critic_step_from_latents<double>(f.batch.x_t, f.batch.eps_s, 1, f.params, opt, f.cfg);
    for (auto *p : f.params.psi()) EXPECT_LE(p->value.cwiseAbs().maxCoeff(), 0.01) << p->name;
  }
}

TEST(CriticStep, LinearCriticAscendsAnalyticDirection) {
  // D(x) = w . x + b with D = 1: dJ/dw = mean(real) - mean(fake).
  TrainConfig cfg = SmallConfig();
  ModelParams<double> params = make_model<double>(cfg.arch);
  params.arch.critic_channels = {};
  params.arch.critic_strides = {};
  params.critic.trunk.clear();
  params.critic.out = internal::MakeDense<double>("critic.out", 8, 1);
  Matrix<double> real = Matrix<double>::Zero(4, 8), fake = Matrix<double>::Zero(3, 8);
  real.col(2).setConstant(0.8);
  fake.col(2).setConstant(-0.4);
  real.col(5).setConstant(-0.6);
  fake.col(5).setConstant(0.2);
  RmsProp<double> opt(1e-4);
  critic_step(real, fake, params, opt, cfg);
  const auto &w = params.critic.out.weight.value;
  EXPECT_GT(w(2, 0), 0.0);
  EXPECT_LT(w(5, 0), 0.0);
  EXPECT_EQ(w(0, 0), 0.0);
}

TEST(EncoderStep, DescendsOnFixedBatch) {
  int decreased = 0;
  for (int repeat = 0; repeat < 20; ++repeat) {
    Fixture f;
    f.rng = RngState(1000 + repeat);
    f.params = init_model<double>(f.cfg.arch, f.rng, f.cfg.clip_c);
    f.batch = draw_batch(f.xs, 0, f.xt, 1, 6, 4, f.rng);
    Adam<double> opt(1e-4);
    const double before = encoder_step(f.batch, f.params, opt, 0.0, false).encoder_objective();
    const double after = compute_vae_gradients(f.batch, f.params, 0.0, false).losses.encoder_objective();
    if (after <= before) ++decreased;
  }
  EXPECT_GE(decreased, 18);
}

TEST(Train, ZeroStepsReturnsInitialParams) {
  TrainConfig cfg = SmallConfig();
  cfg.phase1_steps = 0;
  cfg.phase2_steps = 0;
  RngState rng(1);
  FrameMatrix s = Corpus(rng, 0, 10, 8), t = Corpus(rng, 1, 10, 8);
  TrainResult<double> r = train<double>(s, t, cfg);
  EXPECT_TRUE(r.trace.records.empty());
  RngState init_rng(cfg.seed);
  ModelParams<double> init = init_model<double>(cfg.arch, init_rng, cfg.clip_c);
  auto a = r.params.all();
  auto b = init.all();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(a[i]->value == b[i]->value);
}

TEST(Train, RejectsBadCorpora) {
  TrainConfig cfg = SmallConfig();
  RngState rng(2);
  FrameMatrix s = Corpus(rng, 0, 10, 8), t = Corpus(rng, 0, 10, 8);
  EXPECT_THROW(train<double>(s, t, cfg), ConfigError);
  FrameMatrix empty;
  empty.speaker_id = 1;
  empty.frames.resize(0, 8);
  EXPECT_THROW(train<double>(s, empty, cfg), ConfigError);
  FrameMatrix wide = Corpus(rng, 1, 10, 16);
  EXPECT_THROW(train<double>(s, wide, cfg), ConfigError);
}

TEST(Train, PhaseStructureOfTrace) {
  TrainConfig cfg = SmallConfig();
  RngState rng(3);
  FrameMatrix s = Corpus(rng, 0, 30, 8), t = Corpus(rng, 1, 25, 8);
  int critic_steps = 0, phase1_end = -1;
  std::vector<int> checkpoints;
  TrainHooks<double> hooks;
  hooks.after_critic_step = [&](int step, const ModelParams<double> &p) {
    ++critic_steps;
    EXPECT_GT(step, cfg.phase1_steps);
    for (auto *q : const_cast<ModelParams<double> &>(p).psi()) EXPECT_LE(q->value.cwiseAbs().maxCoeff(), 0.01);
  };
  hooks.on_phase1_end = [&](int step, const ModelParams<double> &) { phase1_end = step; };
  hooks.on_checkpoint = [&](int step, const ModelParams<double> &) { checkpoints.push_back(step); };
  cfg.checkpoint_every = 3;
  TrainTrace trace = train<double>(s, t, cfg, hooks).trace;
  ASSERT_EQ(trace.records.size(), 7u);
  EXPECT_EQ(critic_steps, 3 * 2);
  EXPECT_EQ(phase1_end, 4);
  EXPECT_EQ(checkpoints, (std::vector<int>{3, 6}));
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const TraceRecord &r = trace.records[i];
    EXPECT_EQ(r.step, static_cast<int>(i) + 1);
    EXPECT_EQ(r.phase, i < 4 ? 1 : 2);
    EXPECT_EQ(r.has_wgan, i >= 4);
    if (i < 4) {
      EXPECT_EQ(r.j_wgan, 0.0);
    }
  }
  std::istringstream csv(trace.to_csv());
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "step,phase,j_lat,j_obs,j_wgan,seconds");
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("1,1,", 0), 0u);
  // j_wgan absent in phase 1
  EXPECT_NE(line.find(",,"), std::string::npos) << line;
}

TEST(Train, DeterministicModeIsBitwiseRepeatable) {
  TrainConfig cfg = SmallConfig();
  RngState rng(4);
  FrameMatrix s = Corpus(rng, 0, 30, 8), t = Corpus(rng, 1, 25, 8);
  TrainOptions opts;
  opts.deterministic = true;
  TrainResult<float> a = train<float>(s, t, cfg, {}, opts);
  TrainResult<float> b = train<float>(s, t, cfg, {}, opts);
  EXPECT_EQ(a.trace.to_csv(), b.trace.to_csv());
  NormStats ns;
  ns.min = Eigen::VectorXd::Zero(8);
  ns.max = Eigen::VectorXd::Ones(8);
  EXPECT_EQ(encode_checkpoint(to_contents(a.params, ns, cfg)), encode_checkpoint(to_contents(b.params, ns, cfg)));
}

TEST(Train, JensenShannonAblationRuns) {
  TrainConfig cfg = SmallConfig();
  cfg.adversarial = AdversarialMode::kJensenShannon;
  RngState rng(5);
  FrameMatrix s = Corpus(rng, 0, 30, 8), t = Corpus(rng, 1, 25, 8);
  TrainResult<double> r = train<double>(s, t, cfg);
  EXPECT_LT(r.trace.records.back().j_wgan, 0.0);  // log-likelihood form
}

TEST(TrainConfigText, ParseAndCanonicalRoundTrip) {
  TrainConfig c = parse_train_config(
      "# run\nalpha = 10\nn_critic=3\nlr_critic = 1e-5\nseed = 99\nadversarial = jensen_shannon\n"
      "dim = 16\ngen_channels = 8,4\ncritic_hidden = 12\n");
  EXPECT_EQ(c.alpha, 10);
  EXPECT_EQ(c.n_critic, 3);
  EXPECT_EQ(c.lr_critic, 1e-5);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.adversarial, AdversarialMode::kJensenShannon);
  EXPECT_EQ(c.arch.gen_channels, (std::vector<int>{8, 4}));
  EXPECT_EQ(c.arch.critic_hidden, (std::vector<int>{12}));
  std::string text = serialize_train_config(c);
  EXPECT_EQ(serialize_train_config(parse_train_config(text)), text);
  EXPECT_EQ(serialize_train_config(parse_train_config(serialize_train_config(TrainConfig{}))),
            serialize_train_config(TrainConfig{}));
}

TEST(TrainConfigText, Rejections) {
  EXPECT_THROW(parse_train_config("unknown_key = 1\n"), ConfigError);
  EXPECT_THROW(parse_train_config("alpha = -1\n"), ConfigError);
  EXPECT_THROW(parse_train_config("n_critic = 0\n"), ConfigError);
  EXPECT_THROW(parse_train_config("clip_c = 0\n"), ConfigError);
  EXPECT_THROW(parse_train_config("lr_encoder = 0\n"), ConfigError);
  EXPECT_THROW(parse_train_config("alpha = abc\n"), ConfigError);
  EXPECT_THROW(parse_train_config("adversarial = hinge\n"), ConfigError);
}

CheckpointContents SampleCheckpoint() {
  TrainConfig cfg = SmallConfig();
  RngState rng(9);
  ModelParams<float> p = init_model<float>(cfg.arch, rng, cfg.clip_c);
  NormStats ns;
  ns.min = Eigen::VectorXd::Constant(8, -2.0);
  ns.max = Eigen::VectorXd::Constant(8, 3.0);
  return to_contents(p, ns, cfg);
}

TEST(CheckpointFile, RoundTripBitwise) {
  auto dir = testing::TempDir("ckpt");
  TrainConfig cfg = SmallConfig();
  RngState rng(10);
  ModelParams<float> p = init_model<float>(cfg.arch, rng, cfg.clip_c);
  NormStats ns;
  ns.min = Eigen::VectorXd::Constant(8, -2.0);
  ns.max = Eigen::VectorXd::Constant(8, 3.0);
  std::string a = (dir / "a.vawc").string(), b = (dir / "b.vawc").string();
  save_checkpoint(p, ns, cfg, a);
  Checkpoint<float> ck = load_checkpoint<float>(a);
  auto x = p.all();
  auto y = ck.params.all();
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i]->name, y[i]->name);
    EXPECT_TRUE(x[i]->value == y[i]->value);
  }
  EXPECT_EQ(serialize_train_config(ck.config), serialize_train_config(cfg));
  save_checkpoint(ck.params, ck.norm, ck.config, b);
  EXPECT_EQ(ReadFileBytes(a), ReadFileBytes(b));
}

FormatError::Kind DecodeKind(const std::vector<char> &bytes) {
  try {
    decode_checkpoint(bytes);
  } catch (const FormatError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "corrupt checkpoint decoded";
  return FormatError::Kind::kInvalid;
}

TEST(CheckpointFile, CorruptionKinds) {
  std::vector<char> good = encode_checkpoint(SampleCheckpoint());
  EXPECT_EQ(std::string(good.data(), 4), "VAWC");
  std::vector<char> bad = good;
  bad[1] = 'Z';
  EXPECT_EQ(DecodeKind(bad), FormatError::Kind::kBadMagic);
  bad = good;
  bad[4] = 2;
  EXPECT_EQ(DecodeKind(bad), FormatError::Kind::kBadVersion);
  for (std::size_t cut : {good.size() - 1, good.size() / 2, std::size_t{9}})
    EXPECT_EQ(DecodeKind(std::vector<char>(good.begin(), good.begin() + cut)), FormatError::Kind::kTruncated);
  bad = good;
  bad.push_back('x');
  EXPECT_EQ(DecodeKind(bad), FormatError::Kind::kInvalid);
}

TEST(CheckpointFile, TensorMismatchRejected) {
  CheckpointContents c = SampleCheckpoint();
  c.tensors[0].shape[0] += 1;
  std::size_t count = 1;
  for (int e : c.tensors[0].shape) count *= static_cast<std::size_t>(e);
  c.tensors[0].data.resize(count);
  CheckpointContents decoded = decode_checkpoint(encode_checkpoint(c));
  EXPECT_THROW(from_contents<float>(decoded), FormatError);
  c = SampleCheckpoint();
  c.tensors.pop_back();
  EXPECT_THROW(from_contents<float>(decode_checkpoint(encode_checkpoint(c))), FormatError);
}

TEST(CheckpointFile, EncodeRejectsInconsistentTensor) {
  CheckpointContents c = SampleCheckpoint();
  c.tensors[0].data.pop_back();
  EXPECT_THROW(encode_checkpoint(c), ShapeError);
}

TEST(CheckpointFile, MissingFile) {
  EXPECT_THROW(load_checkpoint<float>("/nonexistent/x.vawc"), FileNotFoundError);
}

}  // namespace
}  // namespace vawgan
