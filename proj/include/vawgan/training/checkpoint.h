// vawgan/training/checkpoint.h

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

#ifndef VAWGAN_TRAINING_CHECKPOINT_H_
#define VAWGAN_TRAINING_CHECKPOINT_H_

#include <string>
#include <vector>

#include "vawgan/features/frame-matrix.h"
#include "vawgan/model/networks.h"
#include "vawgan/training/train-config.h"

namespace vawgan {

/// A named float32 tensor as stored in a checkpoint.
struct StoredTensor {
  std::string name;
  std::vector<int> shape;
  std::vector<float> data;
};

struct CheckpointContents {
  std::vector<StoredTensor> tensors;
  NormStats norm;
  TrainConfig config;
};

// "VAWC" v1: u32 tensor count; per tensor u32 name length, name bytes,
// u32 rank, u32 extents, float32 data; then u32-length-prefixed VAWN blob and
// u32-length-prefixed UTF-8 config text.
std::vector<char> encode_checkpoint(const CheckpointContents &c);
CheckpointContents decode_checkpoint(const std::vector<char> &bytes, const std::string &what = "VAWC");

template <typename Scalar>
struct Checkpoint {
  ModelParams<Scalar> params;
  NormStats norm;
  TrainConfig config;
};

template <typename Scalar>
CheckpointContents to_contents(const ModelParams<Scalar> &params, const NormStats &norm, const TrainConfig &cfg) {
  CheckpointContents c;
  for (const Parameter<Scalar> *p : params.all()) {
    StoredTensor t;
    t.name = p->name;
    t.shape = p->shape;
    t.data.resize(static_cast<std::size_t>(p->value.size()));
    for (Index i = 0; i < p->value.size(); ++i) t.data[i] = static_cast<float>(p->value.data()[i]);
    c.tensors.push_back(std::move(t));
  }
  c.norm = norm;
  c.config = cfg;
  c.config.arch = params.arch;
  return c;
}

// Rebuilds the model from the stored config and fills it by tensor name.
template <typename Scalar>
Checkpoint<Scalar> from_contents(const CheckpointContents &c) {
  Checkpoint<Scalar> ck{make_model<Scalar>(c.config.arch), c.norm, c.config};
  auto params = ck.params.all();
  if (params.size() != c.tensors.size())
    throw FormatError(FormatError::Kind::kInvalid, "checkpoint: tensor count does not match architecture");
  for (Parameter<Scalar> *p : params) {
    const StoredTensor *found = nullptr;
    for (const StoredTensor &t : c.tensors)
      if (t.name == p->name) found = &t;
    if (!found) throw FormatError(FormatError::Kind::kInvalid, "checkpoint: missing tensor " + p->name);
    if (found->shape != p->shape)
      throw FormatError(FormatError::Kind::kInvalid, "checkpoint: shape mismatch for " + p->name);
    for (Index i = 0; i < p->value.size(); ++i) p->value.data()[i] = static_cast<Scalar>(found->data[i]);
  }
  return ck;
}

template <typename Scalar>
void save_checkpoint(const ModelParams<Scalar> &params, const NormStats &norm, const TrainConfig &cfg,
                     const std::string &path);

template <typename Scalar>
Checkpoint<Scalar> load_checkpoint(const std::string &path);

void write_checkpoint_contents(const std::string &path, const CheckpointContents &c);
CheckpointContents read_checkpoint_contents(const std::string &path);

template <typename Scalar>
void save_checkpoint(const ModelParams<Scalar> &params, const NormStats &norm, const TrainConfig &cfg,
                     const std::string &path) {
  write_checkpoint_contents(path, to_contents(params, norm, cfg));
}

template <typename Scalar>
Checkpoint<Scalar> load_checkpoint(const std::string &path) {
  return from_contents<Scalar>(read_checkpoint_contents(path));
}

}  // namespace vawgan

#endif  // VAWGAN_TRAINING_CHECKPOINT_H_
