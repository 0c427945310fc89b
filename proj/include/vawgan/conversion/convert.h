// vawgan/conversion/convert.h

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

#ifndef VAWGAN_CONVERSION_CONVERT_H_
#define VAWGAN_CONVERSION_CONVERT_H_

#include <algorithm>
#include <string>
#include <thread>
#include <vector>

#include "vawgan/errors.h"
#include "vawgan/features/frame-matrix.h"
#include "vawgan/model/networks.h"
#include "vawgan/training/checkpoint.h"

namespace vawgan {

struct ConversionOptions {
  bool use_posterior_mean = true;
  std::uint64_t sample_seed = 0;  // only used when sampling z
  int threads = 1;
};

namespace internal {

// Converts one raw frame: normalize, encode, pick z, generate for the target
// speaker, denormalize.
template <typename Scalar>
RowVector<double> ConvertOne(const RowVector<double> &x, const Eigen::RowVectorXd *eps, int target,
                             const Checkpoint<Scalar> &ck) {
  Matrix<double> row = x;
  Matrix<Scalar> xn = normalize_rows(row, ck.norm).template cast<Scalar>();
  Graph<Scalar> g;
  Posterior<Scalar> post = encode(g, g.Constant(xn), ck.params.encoder, ck.params.arch);
  Var<Scalar> z = post.mu;
  if (eps) {
    Matrix<Scalar> e = eps->template cast<Scalar>();
    z = reparameterize(post.mu, post.log_var, e);
  }
  Var<Scalar> out = generate(g, z, target, ck.params.generator, ck.params.arch);
  return denormalize_rows(out.value().template cast<double>(), ck.norm).row(0);
}

}  // namespace internal

/// Frame-by-frame conversion into `target_speaker`. Frames are independent:
/// no state carries across rows. Energy is passed through unchanged.
template <typename Scalar>
FrameMatrix convert_frames(const FrameMatrix &input, int target_speaker, const Checkpoint<Scalar> &ck,
                           const ConversionOptions &opts = {}) {
  if (target_speaker < 0 || target_speaker >= ck.params.arch.num_speakers)
    throw ConfigError("convert: target speaker " + std::to_string(target_speaker) + " not in checkpoint (" +
                      std::to_string(ck.params.arch.num_speakers) + " speakers)");
  if (input.dim() != ck.norm.dim() || input.dim() != ck.params.arch.dim)
    throw ShapeError("convert: input dim " + std::to_string(input.dim()) + " does not match checkpoint dim " +
                     std::to_string(ck.norm.dim()));
  const Index n = input.num_frames();
  Matrix<double> noise;
  if (!opts.use_posterior_mean) {
    RngState rng(opts.sample_seed);
    noise = sample_standard_normal<double>(rng, n, ck.params.arch.z_dim);
  }
  FrameMatrix out;
  out.speaker_id = target_speaker;
  out.energy = input.energy;
  out.frames.resize(n, input.dim());

  auto work = [&](Index begin, Index end) {
    for (Index i = begin; i < end; ++i) {
      Eigen::RowVectorXd e;
      if (!opts.use_posterior_mean) e = noise.row(i);
      out.frames.row(i) = internal::ConvertOne<Scalar>(input.frames.row(i), opts.use_posterior_mean ? nullptr : &e,
                                                       target_speaker, ck);
    }
  };
  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(n)));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const Index chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      Index b = t * chunk, e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto &th : pool) th.join();
  }
  return out;
}

/// Reads a VAWF file, converts it with the checkpoint at `ckpt_path` and
/// writes a VAWF file carrying the target speaker id. Nothing is written on
/// failure.
void convert_file(const std::string &in_path, const std::string &out_path, int target_speaker,
                  const std::string &ckpt_path, const ConversionOptions &opts = {});

}  // namespace vawgan

#endif  // VAWGAN_CONVERSION_CONVERT_H_
