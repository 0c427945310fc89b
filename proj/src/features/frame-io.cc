// src/features/frame-io.cc

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

#include "vawgan/features/frame-io.h"

#include "vawgan/errors.h"
#include "vawgan/features/binary-io.h"

namespace vawgan {

namespace {
constexpr std::uint32_t kFrameVersion = 1;
constexpr std::uint32_t kNormVersion = 1;
constexpr std::uint32_t kEnergyFlag = 1u;
}  // namespace

std::vector<char> encode_frames(const FrameMatrix &x) {
  ByteWriter w;
  w.PutBytes("VAWF");
  w.PutU32(kFrameVersion);
  w.PutU32(static_cast<std::uint32_t>(x.speaker_id));
  w.PutU32(static_cast<std::uint32_t>(x.dim()));
  w.PutU32(static_cast<std::uint32_t>(x.num_frames()));
  w.PutU32(x.energy ? kEnergyFlag : 0u);
  for (Index n = 0; n < x.num_frames(); ++n)
    for (Index d = 0; d < x.dim(); ++d) w.PutF32(static_cast<float>(x.frames(n, d)));
  if (x.energy)
    for (Index n = 0; n < x.energy->size(); ++n) w.PutF32(static_cast<float>((*x.energy)(n)));
  return w.Release();
}

FrameMatrix decode_frames(const std::vector<char> &bytes, const std::string &what) {
  ByteReader r(bytes.data(), bytes.size(), what);
  r.ExpectMagic("VAWF");
  r.ExpectVersion(kFrameVersion);
  FrameMatrix x;
  x.speaker_id = static_cast<int>(r.GetU32());
  const std::uint32_t dim = r.GetU32();
  const std::uint32_t num = r.GetU32();
  const std::uint32_t flags = r.GetU32();
  if (dim == 0 || num == 0)
    throw FormatError(FormatError::Kind::kInvalid, what + ": empty frame matrix");
  if (flags & ~kEnergyFlag)
    throw FormatError(FormatError::Kind::kInvalid, what + ": unknown flag bits");
  const std::size_t need = (static_cast<std::size_t>(num) * dim + ((flags & kEnergyFlag) ? num : 0)) * 4;
  if (r.remaining() < need) throw FormatError(FormatError::Kind::kTruncated, what + ": truncated");
  x.frames.resize(num, dim);
  for (std::uint32_t n = 0; n < num; ++n)
    for (std::uint32_t d = 0; d < dim; ++d) x.frames(n, d) = r.GetF32();
  if (flags & kEnergyFlag) {
    Eigen::VectorXd e(num);
    for (std::uint32_t n = 0; n < num; ++n) e(n) = r.GetF32();
    x.energy = std::move(e);
  }
  if (r.remaining() != 0)
    throw FormatError(FormatError::Kind::kInvalid, what + ": trailing bytes");
  return x;
}

void write_frames(const std::string &path, const FrameMatrix &x) {
  WriteFileBytes(path, encode_frames(x));
}

FrameMatrix read_frames(const std::string &path) { return decode_frames(ReadFileBytes(path), path); }

std::vector<char> encode_norm_stats(const NormStats &s) {
  ByteWriter w;
  w.PutBytes("VAWN");
  w.PutU32(kNormVersion);
  w.PutU32(static_cast<std::uint32_t>(s.dim()));
  for (Index d = 0; d < s.dim(); ++d) w.PutF32(static_cast<float>(s.min(d)));
  for (Index d = 0; d < s.dim(); ++d) w.PutF32(static_cast<float>(s.max(d)));
  return w.Release();
}

NormStats decode_norm_stats(const char *data, std::size_t size, const std::string &what) {
  ByteReader r(data, size, what);
  r.ExpectMagic("VAWN");
  r.ExpectVersion(kNormVersion);
  const std::uint32_t dim = r.GetU32();
  if (r.remaining() < static_cast<std::size_t>(dim) * 8)
    throw FormatError(FormatError::Kind::kTruncated, what + ": truncated");
  NormStats s;
  s.min.resize(dim);
  s.max.resize(dim);
  for (std::uint32_t d = 0; d < dim; ++d) s.min(d) = r.GetF32();
  for (std::uint32_t d = 0; d < dim; ++d) s.max(d) = r.GetF32();
  if (r.remaining() != 0)
    throw FormatError(FormatError::Kind::kInvalid, what + ": trailing bytes");
  for (std::uint32_t d = 0; d < dim; ++d)
    if (!(s.max(d) >= s.min(d)))
      throw FormatError(FormatError::Kind::kInvalid, what + ": max < min in dim " + std::to_string(d));
  return s;
}

void write_norm_stats(const std::string &path, const NormStats &s) {
  WriteFileBytes(path, encode_norm_stats(s));
}

NormStats read_norm_stats(const std::string &path) {
  std::vector<char> bytes = ReadFileBytes(path);
  return decode_norm_stats(bytes.data(), bytes.size(), path);
}

}  // namespace vawgan
