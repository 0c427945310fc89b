// vawgan/evaluation/metrics.h

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

#ifndef VAWGAN_EVALUATION_METRICS_H_
#define VAWGAN_EVALUATION_METRICS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vawgan/numerics/tensor.h"

namespace vawgan {

/// Per-dimension population variance over the frames (rows). Needs N >= 2.
Eigen::VectorXd global_variance(const Matrix<double> &frames);

/// Unbiased Gaussian-kernel MMD^2 with k(x, y) = exp(-|x - y|^2 / (2 h^2)).
/// For equal sample sizes the cross term also skips i == j (the paired
/// U-statistic), so identical sets score exactly 0. Symmetric in (a, b).
double mmd(const Matrix<double> &a, const Matrix<double> &b, double bandwidth);

/// Median of pairwise Euclidean distances over the pooled rows.
double median_bandwidth(const Matrix<double> &a, const Matrix<double> &b);

/// Exact Wasserstein-1 between two empirical 1-D distributions. Equal sizes
/// use sorted pairing; unequal sizes integrate |F_a - F_b|.
double w1_exact_1d(std::span<const double> a, std::span<const double> b);

// Every `stride`-th row so that at most `max_rows` remain.
Matrix<double> subsample_rows(const Matrix<double> &x, Index max_rows);

struct EvalReport {
  // GV curves keyed by kind, e.g. "gv_reference", "gv_converted".
  std::vector<std::pair<std::string, Eigen::VectorXd>> curves;
  // Scalar summary rows (MMD values, frame counts, ...).
  std::vector<std::pair<std::string, double>> metrics;
  // FNV-1a of the effective configuration text, 16 hex digits; may be empty.
  std::string config_digest;
};

/// CSV: `kind,dim,value` header, one row per curve entry, then summary rows
/// `metric,,value`.
std::string report_to_csv(const EvalReport &r);
EvalReport parse_report(const std::string &csv);
void emit_report(const EvalReport &r, const std::string &path);

std::string config_digest(const std::string &text);

}  // namespace vawgan

#endif  // VAWGAN_EVALUATION_METRICS_H_
