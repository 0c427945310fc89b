// src/training/checkpoint.cc

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

#include "vawgan/training/checkpoint.h"

#include "vawgan/errors.h"
#include "vawgan/features/binary-io.h"
#include "vawgan/features/frame-io.h"

namespace vawgan {

namespace {
constexpr std::uint32_t kCheckpointVersion = 1;
}  // namespace

std::vector<char> encode_checkpoint(const CheckpointContents &c) {
  ByteWriter w;
  w.PutBytes("VAWC");
  w.PutU32(kCheckpointVersion);
  w.PutU32(static_cast<std::uint32_t>(c.tensors.size()));
  for (const StoredTensor &t : c.tensors) {
    w.PutU32(static_cast<std::uint32_t>(t.name.size()));
    w.PutBytes(t.name);
    w.PutU32(static_cast<std::uint32_t>(t.shape.size()));
    std::size_t count = 1;
    for (int e : t.shape) {
      w.PutU32(static_cast<std::uint32_t>(e));
      count *= static_cast<std::size_t>(e);
    }
    if (count != t.data.size()) throw ShapeError("checkpoint: tensor " + t.name + " data does not match its shape");
    for (float f : t.data) w.PutF32(f);
  }
  std::vector<char> norm = encode_norm_stats(c.norm);
  w.PutU32(static_cast<std::uint32_t>(norm.size()));
  w.PutBytes(std::string_view(norm.data(), norm.size()));
  std::string cfg = serialize_train_config(c.config);
  w.PutU32(static_cast<std::uint32_t>(cfg.size()));
  w.PutBytes(cfg);
  return w.Release();
}

CheckpointContents decode_checkpoint(const std::vector<char> &bytes, const std::string &what) {
  ByteReader r(bytes.data(), bytes.size(), what);
  r.ExpectMagic("VAWC");
  r.ExpectVersion(kCheckpointVersion);
  CheckpointContents c;
  const std::uint32_t count = r.GetU32();
  for (std::uint32_t i = 0; i < count; ++i) {
    StoredTensor t;
    t.name = r.GetBytes(r.GetU32());
    const std::uint32_t rank = r.GetU32();
    std::size_t n = 1;
    for (std::uint32_t k = 0; k < rank; ++k) {
      std::uint32_t e = r.GetU32();
      if (e == 0) throw FormatError(FormatError::Kind::kInvalid, what + ": zero extent in " + t.name);
      t.shape.push_back(static_cast<int>(e));
      n *= e;
    }
    if (r.remaining() / 4 < n) throw FormatError(FormatError::Kind::kTruncated, what + ": truncated");
    t.data.resize(n);
    for (std::size_t k = 0; k < n; ++k) t.data[k] = r.GetF32();
    c.tensors.push_back(std::move(t));
  }
  const std::uint32_t norm_len = r.GetU32();
  std::string norm = r.GetBytes(norm_len);
  c.norm = decode_norm_stats(norm.data(), norm.size(), what + " (norm stats)");
  const std::uint32_t cfg_len = r.GetU32();
  c.config = parse_train_config(r.GetBytes(cfg_len));
  if (r.remaining() != 0) throw FormatError(FormatError::Kind::kInvalid, what + ": trailing bytes");
  return c;
}

void write_checkpoint_contents(const std::string &path, const CheckpointContents &c) {
  WriteFileBytes(path, encode_checkpoint(c));
}

CheckpointContents read_checkpoint_contents(const std::string &path) {
  return decode_checkpoint(ReadFileBytes(path), path);
}

}  // namespace vawgan
