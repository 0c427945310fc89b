// vawgan/features/frame-io.h

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

#ifndef VAWGAN_FEATURES_FRAME_IO_H_
#define VAWGAN_FEATURES_FRAME_IO_H_

#include <string>
#include <vector>

#include "vawgan/features/frame-matrix.h"

namespace vawgan {

// "VAWF" v1: speaker_id, dim, num_frames, flags (bit 0 = energy present),
// then float32 frames row-major and optionally float32 energies.
std::vector<char> encode_frames(const FrameMatrix &x);
FrameMatrix decode_frames(const std::vector<char> &bytes, const std::string &what = "VAWF");

void write_frames(const std::string &path, const FrameMatrix &x);
FrameMatrix read_frames(const std::string &path);

// "VAWN" v1: dim, then float32 mins and float32 maxes.
std::vector<char> encode_norm_stats(const NormStats &s);
NormStats decode_norm_stats(const char *data, std::size_t size, const std::string &what = "VAWN");

void write_norm_stats(const std::string &path, const NormStats &s);
NormStats read_norm_stats(const std::string &path);

}  // namespace vawgan

#endif  // VAWGAN_FEATURES_FRAME_IO_H_
