// vawgan/features/synthetic.h

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

#ifndef VAWGAN_FEATURES_SYNTHETIC_H_
#define VAWGAN_FEATURES_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vawgan/features/frame-matrix.h"
#include "vawgan/numerics/tensor.h"

namespace vawgan {

/// Multi-speaker corpus built from K shared prototypes c_k. Speaker m renders
/// a frame of cluster k as A_m c_k + b_m + noise.
struct SyntheticSpec {
  int num_speakers = 2;
  int dim = 24;
  int num_clusters = 8;
  int frames_per_speaker = 4000;
  double noise_scale = 0.05;
  double prototype_scale = 3.0;
  // Quantize each smoothed prototype value to +-prototype_scale.
  bool binary_prototypes = true;
  // A_m = I + map_perturbation * G / sqrt(D), G standard normal.
  double map_perturbation = 0.1;
  double bias_scale = 0.5;
  double max_condition = 50.0;
  // The first `silent_clusters` prototypes get energies around -60 dB.
  int silent_clusters = 1;
  std::uint64_t seed = 1;
};

struct GroundTruth {
  Matrix<double> prototypes;                 // K x D
  std::vector<Eigen::MatrixXd> maps;         // A_m, D x D
  std::vector<Eigen::VectorXd> biases;       // b_m
  std::vector<std::vector<int>> clusters;    // per speaker, per frame

  Eigen::VectorXd noiseless_frame(int speaker, int cluster) const;
  // A_t A_s^{-1} (x - b_s) + b_t
  Eigen::VectorXd ideal_conversion(const Eigen::VectorXd &x, int source, int target) const;
};

struct SyntheticCorpus {
  std::vector<FrameMatrix> speakers;  // speaker_id == index
  GroundTruth truth;
};

SyntheticCorpus generate_synthetic(const SyntheticSpec &spec, RngState &rng);
SyntheticCorpus generate_synthetic(const SyntheticSpec &spec);

// key = value lines with '#' comments; unknown keys are a ConfigError.
SyntheticSpec parse_synthetic_spec(const std::string &text);

}  // namespace vawgan

#endif  // VAWGAN_FEATURES_SYNTHETIC_H_
