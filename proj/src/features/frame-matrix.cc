// src/features/frame-matrix.cc

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

#include "vawgan/features/frame-matrix.h"

#include <algorithm>
#include <string>

#include "vawgan/errors.h"

namespace vawgan {

NormStats fit_normalizer(std::span<const FrameMatrix> corpus) {
  if (corpus.empty()) throw ConfigError("fit_normalizer: empty corpus");
  const Index dim = corpus.front().dim();
  NormStats s;
  s.min = Eigen::VectorXd::Constant(dim, std::numeric_limits<double>::infinity());
  s.max = Eigen::VectorXd::Constant(dim, -std::numeric_limits<double>::infinity());
  Index total = 0;
  for (const FrameMatrix &m : corpus) {
    if (m.dim() != dim)
      throw ShapeError("fit_normalizer: speaker " + std::to_string(m.speaker_id) + " has dim " +
                       std::to_string(m.dim()) + ", expected " + std::to_string(dim));
    if (m.num_frames() == 0) continue;
    s.min = s.min.cwiseMin(m.frames.colwise().minCoeff().transpose());
    s.max = s.max.cwiseMax(m.frames.colwise().maxCoeff().transpose());
    total += m.num_frames();
  }
  if (total == 0) throw ConfigError("fit_normalizer: corpus has no frames");
  return s;
}

Matrix<double> normalize_rows(const Matrix<double> &x, const NormStats &s) {
  if (x.cols() != s.dim())
    throw ShapeError("normalize: frame dim " + std::to_string(x.cols()) + " vs stats dim " +
                     std::to_string(s.dim()));
  Matrix<double> out(x.rows(), x.cols());
  for (Index d = 0; d < x.cols(); ++d) {
    if (s.degenerate(d)) {
      out.col(d).setZero();
      continue;
    }
    const double range = s.max(d) - s.min(d);
    out.col(d) = ((x.col(d).array() - s.min(d)) * (2.0 / range) - 1.0).matrix();
  }
  return out;
}

Matrix<double> denormalize_rows(const Matrix<double> &x, const NormStats &s) {
  if (x.cols() != s.dim())
    throw ShapeError("denormalize: frame dim " + std::to_string(x.cols()) + " vs stats dim " +
                     std::to_string(s.dim()));
  Matrix<double> out(x.rows(), x.cols());
  for (Index d = 0; d < x.cols(); ++d) {
    if (s.degenerate(d)) {
      out.col(d).setConstant(s.min(d));
      continue;
    }
    const double range = s.max(d) - s.min(d);
    out.col(d) = ((x.col(d).array() + 1.0) * (0.5 * range) + s.min(d)).matrix();
  }
  return out;
}

FrameMatrix normalize(const FrameMatrix &x, const NormStats &s) {
  FrameMatrix out = x;
  out.frames = normalize_rows(x.frames, s);
  return out;
}

FrameMatrix denormalize(const FrameMatrix &x, const NormStats &s) {
  FrameMatrix out = x;
  out.frames = denormalize_rows(x.frames, s);
  return out;
}

NonsilentFrames filter_nonsilent(const FrameMatrix &x, double threshold_db) {
  NonsilentFrames r;
  if (!x.energy) {
    r.frames = x;
    r.energy_missing = true;
    r.kept.resize(x.num_frames());
    for (Index i = 0; i < x.num_frames(); ++i) r.kept[i] = i;
    return r;
  }
  const Eigen::VectorXd &e = *x.energy;
  if (e.size() != x.num_frames()) throw ShapeError("filter_nonsilent: energy length mismatch");
  const double floor = e.size() ? e.maxCoeff() - threshold_db : 0.0;
  for (Index i = 0; i < e.size(); ++i)
    if (e(i) >= floor) r.kept.push_back(i);
  r.frames.speaker_id = x.speaker_id;
  r.frames.frames.resize(static_cast<Index>(r.kept.size()), x.dim());
  Eigen::VectorXd kept_energy(static_cast<Index>(r.kept.size()));
  for (std::size_t j = 0; j < r.kept.size(); ++j) {
    r.frames.frames.row(j) = x.frames.row(r.kept[j]);
    kept_energy(j) = e(r.kept[j]);
  }
  r.frames.energy = std::move(kept_energy);
  return r;
}

}  // namespace vawgan
