// vawgan/training/train-config.h

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

#ifndef VAWGAN_TRAINING_TRAIN_CONFIG_H_
#define VAWGAN_TRAINING_TRAIN_CONFIG_H_

#include <cstdint>
#include <string>

#include "vawgan/key-value.h"
#include "vawgan/model/networks.h"

namespace vawgan {

enum class AdversarialMode { kWasserstein, kJensenShannon };

/// Every hyperparameter of a run. Config-file keys are the field names
/// (architecture fields included, e.g. `z_dim`, `enc_channels = 8,16,16`).
struct TrainConfig {
  double alpha = 50.0;
  int n_critic = 5;
  double clip_c = 0.01;
  int batch_size = 64;
  double lr_encoder = 1e-4;
  double lr_generator = 1e-4;
  double lr_critic = 5e-5;
  int phase1_steps = 5000;
  int phase2_steps = 2000;
  int checkpoint_every = 0;  // 0 disables intermediate checkpoints
  std::uint64_t seed = 1;
  AdversarialMode adversarial = AdversarialMode::kWasserstein;
  ArchConfig arch;

  int z_dim() const { return arch.z_dim; }
  void Validate() const;
};

// Applies key = value pairs on top of `cfg`; unknown keys are a ConfigError.
void apply_config(const KeyValues &kv, TrainConfig *cfg);
TrainConfig parse_train_config(const std::string &text);

// Canonical key = value rendering; parse_train_config(serialize(c)) == c.
std::string serialize_train_config(const TrainConfig &cfg);

}  // namespace vawgan

#endif  // VAWGAN_TRAINING_TRAIN_CONFIG_H_
