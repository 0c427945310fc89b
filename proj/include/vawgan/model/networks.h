// vawgan/model/networks.h

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

#ifndef VAWGAN_MODEL_NETWORKS_H_
#define VAWGAN_MODEL_NETWORKS_H_

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "vawgan/errors.h"
#include "vawgan/numerics/graph.h"
#include "vawgan/numerics/tensor.h"

namespace vawgan {

/// Layer layout of the three networks. Everything here is overridable from
/// the training config (see train-config.h for the key names).
struct ArchConfig {
  int dim = 24;
  int z_dim = 64;
  int num_speakers = 2;
  int embed_dim = 16;
  std::vector<int> enc_channels{8, 16, 16};
  std::vector<int> enc_strides{1, 2, 2};
  int enc_kernel = 5;
  // One nearest-neighbour x2 upsample + conv per entry; dim must be divisible
  // by 2^size.
  std::vector<int> gen_channels{32, 16, 8};
  int gen_kernel = 5;
  std::vector<int> critic_channels{8, 16, 16};
  std::vector<int> critic_strides{1, 2, 2};
  int critic_kernel = 5;
  // Dense hidden widths between the critic's conv trunk and its scalar output.
  std::vector<int> critic_hidden{};
  double slope = 0.2;
  double log_var_bound = 14.0;

  void Validate() const;
  int gen_base_length() const { return dim >> static_cast<int>(gen_channels.size()); }
};

inline void ArchConfig::Validate() const {
  if (dim <= 0 || z_dim <= 0 || num_speakers <= 0 || embed_dim <= 0)
    throw ConfigError("arch: dims must be positive");
  if (enc_channels.size() != enc_strides.size())
    throw ConfigError("arch: enc_channels and enc_strides differ in length");
  if (critic_channels.size() != critic_strides.size())
    throw ConfigError("arch: critic_channels and critic_strides differ in length");
  if (gen_channels.empty()) throw ConfigError("arch: gen_channels must be non-empty");
  const int ups = static_cast<int>(gen_channels.size());
  if (gen_base_length() <= 0 || (gen_base_length() << ups) != dim)
    throw ConfigError("arch: dim " + std::to_string(dim) + " not divisible by 2^" +
                      std::to_string(ups));
  for (int k : {enc_kernel, gen_kernel, critic_kernel})
    if (k <= 0 || k % 2 == 0) throw ConfigError("arch: kernels must be odd and positive");
  if (!(slope >= 0 && slope < 1)) throw ConfigError("arch: leaky-ReLU slope must be in [0, 1)");
}

template <typename Scalar>
struct DenseLayer {
  Parameter<Scalar> weight;  // in x out
  Parameter<Scalar> bias;    // 1 x out
};

template <typename Scalar>
struct ConvLayer {
  Conv1dShape shape;
  Parameter<Scalar> weight;  // Cout x (Cin * K)
  Parameter<Scalar> bias;    // 1 x Cout
};

/// phi = trunk + mean head + log-variance head.
template <typename Scalar>
struct EncoderParams {
  std::vector<ConvLayer<Scalar>> trunk;
  DenseLayer<Scalar> mu_head;
  DenseLayer<Scalar> log_var_head;
};

/// theta, including the speaker-embedding table (S x E).
template <typename Scalar>
struct GeneratorParams {
  Parameter<Scalar> embedding;
  DenseLayer<Scalar> merge;
  std::vector<ConvLayer<Scalar>> layers;
};

/// psi.
template <typename Scalar>
struct CriticParams {
  std::vector<ConvLayer<Scalar>> trunk;
  std::vector<DenseLayer<Scalar>> hidden;
  DenseLayer<Scalar> out;
};

template <typename Scalar>
struct ModelParams {
  ArchConfig arch;
  EncoderParams<Scalar> encoder;
  GeneratorParams<Scalar> generator;
  CriticParams<Scalar> critic;

  std::vector<Parameter<Scalar> *> phi();
  std::vector<Parameter<Scalar> *> theta();
  std::vector<Parameter<Scalar> *> psi();
  std::vector<const Parameter<Scalar> *> all() const;
  std::vector<Parameter<Scalar> *> all();
};

namespace internal {

template <typename Scalar>
DenseLayer<Scalar> MakeDense(const std::string &name, int in, int out) {
  DenseLayer<Scalar> l;
  l.weight = Parameter<Scalar>(name + ".weight", {in, out}, in, out);
  l.bias = Parameter<Scalar>(name + ".bias", {out}, 1, out);
  return l;
}

template <typename Scalar>
ConvLayer<Scalar> MakeConv(const std::string &name, const Conv1dShape &s) {
  ConvLayer<Scalar> l;
  l.shape = s;
  l.weight = Parameter<Scalar>(name + ".weight", {s.out_channels, s.in_channels, s.kernel},
                               s.out_channels, s.in_channels * s.kernel);
  l.bias = Parameter<Scalar>(name + ".bias", {s.out_channels}, 1, s.out_channels);
  return l;
}

// Builds a strided conv stack over a single-channel input of length dim;
// returns the flattened output width.
template <typename Scalar>
int MakeTrunk(const std::string &prefix, int dim, const std::vector<int> &channels,
              const std::vector<int> &strides, int kernel, std::vector<ConvLayer<Scalar>> *out) {
  int c = 1, len = dim;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    Conv1dShape s{c, len, channels[i], kernel, strides[i], kernel / 2};
    if (!s.valid() || s.out_length() <= 0)
      throw ConfigError(prefix + ": conv " + std::to_string(i) + " has no output");
    out->push_back(MakeConv<Scalar>(prefix + ".conv" + std::to_string(i), s));
    c = s.out_channels;
    len = s.out_length();
  }
  return c * len;
}

template <typename Scalar>
void Collect(DenseLayer<Scalar> &l, std::vector<Parameter<Scalar> *> *v) {
  v->push_back(&l.weight);
  v->push_back(&l.bias);
}

template <typename Scalar>
void Collect(ConvLayer<Scalar> &l, std::vector<Parameter<Scalar> *> *v) {
  v->push_back(&l.weight);
  v->push_back(&l.bias);
}

template <typename Scalar>
Var<Scalar> Dense(Graph<Scalar> &g, Var<Scalar> x, const DenseLayer<Scalar> &l) {
  return add_bias(matmul(x, g.Param(l.weight)), g.Param(l.bias));
}

template <typename Scalar>
Var<Scalar> Conv(Graph<Scalar> &g, Var<Scalar> x, const ConvLayer<Scalar> &l) {
  return conv1d(x, g.Param(l.weight), g.Param(l.bias), l.shape);
}

template <typename Scalar>
void CheckFinite(Var<Scalar> v, const char *net, std::size_t layer) {
  if (!v.value().allFinite())
    throw NumericError(std::string(net) + " layer " + std::to_string(layer) +
                       ": non-finite activation");
}

// Dense matrix of a conv layer's linear part, mapping a flattened input row
// to a flattened output row.
template <typename Scalar>
Eigen::MatrixXd ConvOperator(const ConvLayer<Scalar> &l) {
  const Conv1dShape &s = l.shape;
  const int lout = s.out_length();
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(s.in_channels * s.length, s.out_channels * lout);
  for (int o = 0; o < s.out_channels; ++o)
    for (int t = 0; t < lout; ++t)
      for (int c = 0; c < s.in_channels; ++c)
        for (int k = 0; k < s.kernel; ++k) {
          int pos = t * s.stride + k - s.padding;
          if (pos >= 0 && pos < s.length)
            op(c * s.length + pos, o * lout + t) += static_cast<double>(l.weight.value(o, c * s.kernel + k));
        }
  return op;
}

inline double SpectralNorm(const Eigen::MatrixXd &m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace internal

template <typename Scalar>
std::vector<Parameter<Scalar> *> ModelParams<Scalar>::phi() {
  std::vector<Parameter<Scalar> *> v;
  for (auto &l : encoder.trunk) internal::Collect(l, &v);
  internal::Collect(encoder.mu_head, &v);
  internal::Collect(encoder.log_var_head, &v);
  return v;
}

template <typename Scalar>
std::vector<Parameter<Scalar> *> ModelParams<Scalar>::theta() {
  std::vector<Parameter<Scalar> *> v{&generator.embedding};
  internal::Collect(generator.merge, &v);
  for (auto &l : generator.layers) internal::Collect(l, &v);
  return v;
}

template <typename Scalar>
std::vector<Parameter<Scalar> *> ModelParams<Scalar>::psi() {
  std::vector<Parameter<Scalar> *> v;
  for (auto &l : critic.trunk) internal::Collect(l, &v);
  for (auto &l : critic.hidden) internal::Collect(l, &v);
  internal::Collect(critic.out, &v);
  return v;
}

template <typename Scalar>
std::vector<Parameter<Scalar> *> ModelParams<Scalar>::all() {
  std::vector<Parameter<Scalar> *> v = phi();
  for (auto *p : theta()) v.push_back(p);
  for (auto *p : psi()) v.push_back(p);
  return v;
}

template <typename Scalar>
std::vector<const Parameter<Scalar> *> ModelParams<Scalar>::all() const {
  std::vector<const Parameter<Scalar> *> v;
  for (auto *p : const_cast<ModelParams *>(this)->all()) v.push_back(p);
  return v;
}

/// Allocates all parameter tensors with zeros.
template <typename Scalar>
ModelParams<Scalar> make_model(const ArchConfig &arch) {
  arch.Validate();
  ModelParams<Scalar> m;
  m.arch = arch;

  int flat = internal::MakeTrunk<Scalar>("encoder", arch.dim, arch.enc_channels, arch.enc_strides,
                                         arch.enc_kernel, &m.encoder.trunk);
  m.encoder.mu_head = internal::MakeDense<Scalar>("encoder.mu", flat, arch.z_dim);
  m.encoder.log_var_head = internal::MakeDense<Scalar>("encoder.log_var", flat, arch.z_dim);

  m.generator.embedding = Parameter<Scalar>("generator.embedding", {arch.num_speakers, arch.embed_dim},
                                            arch.num_speakers, arch.embed_dim);
  const int base = arch.gen_base_length();
  m.generator.merge = internal::MakeDense<Scalar>("generator.merge", arch.z_dim + arch.embed_dim,
                                                  arch.gen_channels[0] * base);
  int len = base;
  for (std::size_t i = 0; i < arch.gen_channels.size(); ++i) {
    len *= 2;
    int cin = arch.gen_channels[i];
    int cout = i + 1 < arch.gen_channels.size() ? arch.gen_channels[i + 1] : 1;
    Conv1dShape s{cin, len, cout, arch.gen_kernel, 1, arch.gen_kernel / 2};
    m.generator.layers.push_back(internal::MakeConv<Scalar>("generator.conv" + std::to_string(i), s));
  }

  flat = internal::MakeTrunk<Scalar>("critic", arch.dim, arch.critic_channels, arch.critic_strides,
                                     arch.critic_kernel, &m.critic.trunk);
  for (std::size_t i = 0; i < arch.critic_hidden.size(); ++i) {
    m.critic.hidden.push_back(
        internal::MakeDense<Scalar>("critic.hidden" + std::to_string(i), flat, arch.critic_hidden[i]));
    flat = arch.critic_hidden[i];
  }
  m.critic.out = internal::MakeDense<Scalar>("critic.out", flat, 1);
  return m;
}

/// He-normal weights for encoder and generator, N(0, 1) embeddings, critic
/// weights uniform in [-clip, clip]; biases zero.
template <typename Scalar>
ModelParams<Scalar> init_model(const ArchConfig &arch, RngState &rng, double critic_clip) {
  ModelParams<Scalar> m = make_model<Scalar>(arch);
  auto he = [&rng](Parameter<Scalar> &w, int fan_in) {
    w.value = sample_standard_normal<Scalar>(rng, w.value.rows(), w.value.cols()) *
              static_cast<Scalar>(std::sqrt(2.0 / fan_in));
  };
  for (auto &l : m.encoder.trunk) he(l.weight, l.shape.in_channels * l.shape.kernel);
  he(m.encoder.mu_head.weight, static_cast<int>(m.encoder.mu_head.weight.value.rows()));
  he(m.encoder.log_var_head.weight, static_cast<int>(m.encoder.log_var_head.weight.value.rows()));
  // Start the posterior narrow-ish rather than at the prior width.
  m.encoder.log_var_head.weight.value *= Scalar(0.1);
  m.generator.embedding.value =
      sample_standard_normal<Scalar>(rng, arch.num_speakers, arch.embed_dim);
  he(m.generator.merge.weight, static_cast<int>(m.generator.merge.weight.value.rows()));
  for (auto &l : m.generator.layers) he(l.weight, l.shape.in_channels * l.shape.kernel);
  for (Parameter<Scalar> *p : m.psi())
    if (p->name.ends_with(".weight"))
      p->value = sample_uniform<Scalar>(rng, p->value.rows(), p->value.cols(), -critic_clip, critic_clip);
  return m;
}

template <typename Scalar>
struct Posterior {
  Var<Scalar> mu;
  Var<Scalar> log_var;
};

/// Speaker-independent inference network: frames (B x D) -> (mu, log_var),
/// each B x z_dim. The signature deliberately takes no speaker id.
template <typename Scalar>
Posterior<Scalar> encode(Graph<Scalar> &g, Var<Scalar> x, const EncoderParams<Scalar> &enc,
                         const ArchConfig &arch) {
  if (x.cols() != arch.dim)
    g.ShapeFail("encode", "input has " + std::to_string(x.cols()) + " dims, expected " +
                              std::to_string(arch.dim));
  Var<Scalar> h = x;
  for (std::size_t i = 0; i < enc.trunk.size(); ++i) {
    h = leaky_relu(internal::Conv(g, h, enc.trunk[i]), static_cast<Scalar>(arch.slope));
    internal::CheckFinite(h, "encoder", i);
  }
  Posterior<Scalar> post;
  post.mu = internal::Dense(g, h, enc.mu_head);
  const Scalar bound = static_cast<Scalar>(arch.log_var_bound);
  post.log_var = clamp(internal::Dense(g, h, enc.log_var_head), -bound, bound);
  internal::CheckFinite(post.mu, "encoder", enc.trunk.size());
  internal::CheckFinite(post.log_var, "encoder", enc.trunk.size());
  return post;
}

/// z = mu + exp(0.5 log_var) * eps for the supplied noise eps.
template <typename Scalar>
Var<Scalar> reparameterize(Var<Scalar> mu, Var<Scalar> log_var, const Matrix<Scalar> &eps) {
  Graph<Scalar> &g = *mu.graph();
  if (eps.rows() != mu.rows() || eps.cols() != mu.cols() || log_var.rows() != mu.rows() ||
      log_var.cols() != mu.cols())
    g.ShapeFail("reparameterize", "mu, log_var and eps must share a shape");
  Var<Scalar> sigma = exp(scale(log_var, Scalar(0.5)));
  return mu + mul(sigma, g.Constant(eps, "eps"));
}

template <typename Scalar>
Matrix<Scalar> one_hot(std::span<const int> speakers, int num_speakers) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(static_cast<Index>(speakers.size()), num_speakers);
  for (std::size_t i = 0; i < speakers.size(); ++i) {
    if (speakers[i] < 0 || speakers[i] >= num_speakers)
      throw ConfigError("unknown speaker id " + std::to_string(speakers[i]) + " (model has " +
                        std::to_string(num_speakers) + ")");
    m(static_cast<Index>(i), speakers[i]) = Scalar(1);
  }
  return m;
}

/// Conditional synthesizer: [z | y_speaker] -> frames in (-1, 1). One
/// speaker id per row of z.
template <typename Scalar>
Var<Scalar> generate(Graph<Scalar> &g, Var<Scalar> z, std::span<const int> speakers,
                     const GeneratorParams<Scalar> &gen, const ArchConfig &arch) {
  if (static_cast<Index>(speakers.size()) != z.rows())
    g.ShapeFail("generate", "one speaker id per latent row required");
  if (z.cols() != arch.z_dim)
    g.ShapeFail("generate", "latent width " + std::to_string(z.cols()));
  Var<Scalar> code = g.Constant(one_hot<Scalar>(speakers, arch.num_speakers), "one_hot");
  Var<Scalar> y = matmul(code, g.Param(gen.embedding));
  Var<Scalar> h = leaky_relu(internal::Dense(g, concat_cols(z, y), gen.merge),
                             static_cast<Scalar>(arch.slope));
  for (std::size_t i = 0; i < gen.layers.size(); ++i) {
    const ConvLayer<Scalar> &l = gen.layers[i];
    h = internal::Conv(g, upsample(h, l.shape.in_channels, 2), l);
    h = i + 1 < gen.layers.size() ? leaky_relu(h, static_cast<Scalar>(arch.slope)) : tanh(h);
  }
  return h;
}

template <typename Scalar>
Var<Scalar> generate(Graph<Scalar> &g, Var<Scalar> z, int speaker,
                     const GeneratorParams<Scalar> &gen, const ArchConfig &arch) {
  std::vector<int> ids(static_cast<std::size_t>(z.rows()), speaker);
  return generate(g, z, std::span<const int>(ids), gen, arch);
}

/// Unbounded critic scores, B x 1.
template <typename Scalar>
Var<Scalar> criticize(Graph<Scalar> &g, Var<Scalar> x, const CriticParams<Scalar> &critic,
                      const ArchConfig &arch) {
  if (x.cols() != arch.dim)
    g.ShapeFail("criticize", "input has " + std::to_string(x.cols()) + " dims");
  const Scalar slope = static_cast<Scalar>(arch.slope);
  Var<Scalar> h = x;
  for (const auto &l : critic.trunk) h = leaky_relu(internal::Conv(g, h, l), slope);
  for (const auto &l : critic.hidden) h = leaky_relu(internal::Dense(g, h, l), slope);
  return internal::Dense(g, h, critic.out);
}

/// Upper bound on the critic's Lipschitz constant w.r.t. the Euclidean norm
/// of one frame: product of the layers' operator norms (leaky-ReLU with
/// slope < 1 is 1-Lipschitz).
template <typename Scalar>
double lipschitz_bound(const CriticParams<Scalar> &critic) {
  double l = 1.0;
  for (const auto &c : critic.trunk) l *= internal::SpectralNorm(internal::ConvOperator(c));
  for (const auto &d : critic.hidden)
    l *= internal::SpectralNorm(d.weight.value.template cast<double>());
  l *= internal::SpectralNorm(critic.out.weight.value.template cast<double>());
  return l;
}

}  // namespace vawgan

#endif  // VAWGAN_MODEL_NETWORKS_H_
