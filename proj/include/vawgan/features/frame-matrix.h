// vawgan/features/frame-matrix.h

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

#ifndef VAWGAN_FEATURES_FRAME_MATRIX_H_
#define VAWGAN_FEATURES_FRAME_MATRIX_H_

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vawgan/numerics/tensor.h"

namespace vawgan {

/// Spectral feature frames of one speaker: N x D, one frame per row, plus an
/// optional per-frame log-energy (dB).
struct FrameMatrix {
  int speaker_id = 0;
  Matrix<double> frames;
  std::optional<Eigen::VectorXd> energy;

  Index num_frames() const { return frames.rows(); }
  Index dim() const { return frames.cols(); }
};

/// Per-dimension min/max used to rescale features to [-1, 1].
struct NormStats {
  Eigen::VectorXd min;
  Eigen::VectorXd max;

  Index dim() const { return min.size(); }
  bool degenerate(Index d) const { return max(d) == min(d); }
};

// One shared normalizer across every frame of every speaker.
NormStats fit_normalizer(std::span<const FrameMatrix> corpus);

FrameMatrix normalize(const FrameMatrix &x, const NormStats &s);
FrameMatrix denormalize(const FrameMatrix &x, const NormStats &s);

// Row-wise helpers shared by normalize/denormalize and the conversion path.
Matrix<double> normalize_rows(const Matrix<double> &x, const NormStats &s);
Matrix<double> denormalize_rows(const Matrix<double> &x, const NormStats &s);

struct NonsilentFrames {
  FrameMatrix frames;
  std::vector<Index> kept;       // indices into the input, increasing
  bool energy_missing = false;   // input returned unchanged
};

/// Keeps frames whose energy is at least (max energy - threshold_db).
NonsilentFrames filter_nonsilent(const FrameMatrix &x, double threshold_db = 30.0);

}  // namespace vawgan

#endif  // VAWGAN_FEATURES_FRAME_MATRIX_H_
