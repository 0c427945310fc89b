// src/conversion/convert.cc

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

#include "vawgan/conversion/convert.h"

#include "vawgan/features/frame-io.h"

namespace vawgan {

void convert_file(const std::string &in_path, const std::string &out_path, int target_speaker,
                  const std::string &ckpt_path, const ConversionOptions &opts) {
  FrameMatrix input = read_frames(in_path);
  Checkpoint<float> ck = load_checkpoint<float>(ckpt_path);
  write_frames(out_path, convert_frames(input, target_speaker, ck, opts));
}

}  // namespace vawgan
