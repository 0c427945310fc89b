// src/features/synthetic.cc

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

#include "vawgan/features/synthetic.h"

#include <cmath>

#include "vawgan/errors.h"
#include "vawgan/key-value.h"

namespace vawgan {

Eigen::VectorXd GroundTruth::noiseless_frame(int speaker, int cluster) const {
  return maps.at(speaker) * prototypes.row(cluster).transpose() + biases.at(speaker);
}

Eigen::VectorXd GroundTruth::ideal_conversion(const Eigen::VectorXd &x, int source, int target) const {
  Eigen::VectorXd content = maps.at(source).partialPivLu().solve(x - biases.at(source));
  return maps.at(target) * content + biases.at(target);
}

SyntheticCorpus generate_synthetic(const SyntheticSpec &spec, RngState &rng) {
  if (spec.num_speakers < 1 || spec.dim < 1 || spec.num_clusters < 1 || spec.frames_per_speaker < 1)
    throw ConfigError("synthetic spec: counts must be positive");
  if (spec.noise_scale < 0) throw ConfigError("synthetic spec: noise_scale must be >= 0");
  if (spec.silent_clusters < 0 || spec.silent_clusters > spec.num_clusters)
    throw ConfigError("synthetic spec: silent_clusters out of range");
  const int D = spec.dim, K = spec.num_clusters;

  SyntheticCorpus corpus;
  GroundTruth &truth = corpus.truth;

  // Prototypes: white noise smoothed along the feature axis, so neighbouring
  // dims are correlated like a spectral envelope.
  Matrix<double> raw = sample_standard_normal<double>(rng, K, D);
  truth.prototypes.resize(K, D);
  for (int k = 0; k < K; ++k) {
    for (int d = 0; d < D; ++d) {
      double acc = 0, wsum = 0;
      for (int off = -1; off <= 1; ++off) {
        int j = d + off;
        if (j < 0 || j >= D) continue;
        double w = off == 0 ? 0.5 : 0.25;
        acc += w * raw(k, j);
        wsum += w * w;
      }
      const double v = acc / std::sqrt(wsum);
      truth.prototypes(k, d) = spec.prototype_scale * (spec.binary_prototypes ? (v >= 0 ? 1.0 : -1.0) : v);
    }
  }

  Eigen::VectorXd levels(K);
  for (int k = 0; k < K; ++k)
    levels(k) = k < spec.silent_clusters ? -60.0 : rng.Uniform(-10.0, 0.0);

  for (int m = 0; m < spec.num_speakers; ++m) {
    Eigen::MatrixXd g = sample_standard_normal<double>(rng, D, D);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(D, D) + spec.map_perturbation * g / std::sqrt(double(D));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto &sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                                              : std::numeric_limits<double>::infinity();
    if (!(cond <= spec.max_condition))
      throw ConfigError("synthetic spec: rendering map of speaker " + std::to_string(m) +
                        " has condition number " + std::to_string(cond));
    Eigen::VectorXd b = spec.bias_scale * sample_standard_normal<double>(rng, D, 1);
    truth.maps.push_back(a);
    truth.biases.push_back(b);
  }

  for (int m = 0; m < spec.num_speakers; ++m) {
    FrameMatrix fm;
    fm.speaker_id = m;
    fm.frames.resize(spec.frames_per_speaker, D);
    Eigen::VectorXd energy(spec.frames_per_speaker);
    std::vector<int> assign(spec.frames_per_speaker);
    // Cluster-major rendering keeps A_m c_k + b_m exact for noise = 0.
    Matrix<double> rendered(K, D);
    for (int k = 0; k < K; ++k) rendered.row(k) = truth.noiseless_frame(m, k).transpose();
    for (int n = 0; n < spec.frames_per_speaker; ++n) {
      int k = static_cast<int>(rng.Below(K));
      assign[n] = k;
      fm.frames.row(n) = rendered.row(k);
      if (spec.noise_scale > 0)
        for (int d = 0; d < D; ++d) fm.frames(n, d) += spec.noise_scale * rng.Normal();
      energy(n) = levels(k) + rng.Normal();
    }
    fm.energy = std::move(energy);
    corpus.speakers.push_back(std::move(fm));
    truth.clusters.push_back(std::move(assign));
  }

  for (int m = 1; m < spec.num_speakers; ++m) {
    if ((truth.biases[m] - truth.biases[0]).norm() == 0) continue;
    Eigen::VectorXd diff = corpus.speakers[m].frames.colwise().mean() -
                           corpus.speakers[0].frames.colwise().mean();
    if (diff.norm() == 0)
      throw ConfigError("synthetic corpus: speaker means coincide; conversion task is trivial");
  }
  return corpus;
}

SyntheticCorpus generate_synthetic(const SyntheticSpec &spec) {
  RngState rng(spec.seed);
  return generate_synthetic(spec, rng);
}

SyntheticSpec parse_synthetic_spec(const std::string &text) {
  SyntheticSpec s;
  for (const auto &[k, v] : parse_key_values(text)) {
    if (k == "num_speakers") s.num_speakers = static_cast<int>(parse_int(k, v));
    else if (k == "dim") s.dim = static_cast<int>(parse_int(k, v));
    else if (k == "num_clusters") s.num_clusters = static_cast<int>(parse_int(k, v));
    else if (k == "frames_per_speaker") s.frames_per_speaker = static_cast<int>(parse_int(k, v));
    else if (k == "noise_scale") s.noise_scale = parse_double(k, v);
    else if (k == "prototype_scale") s.prototype_scale = parse_double(k, v);
    else if (k == "map_perturbation") s.map_perturbation = parse_double(k, v);
    else if (k == "binary_prototypes") s.binary_prototypes = parse_bool(k, v);
    else if (k == "bias_scale") s.bias_scale = parse_double(k, v);
    else if (k == "max_condition") s.max_condition = parse_double(k, v);
    else if (k == "silent_clusters") s.silent_clusters = static_cast<int>(parse_int(k, v));
    else if (k == "seed") s.seed = parse_u64(k, v);
    else throw ConfigError("unknown synthetic spec key: " + k);
  }
  return s;
}

}  // namespace vawgan
