// src/evaluation/metrics.cc

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

#include "vawgan/evaluation/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vawgan/errors.h"
#include "vawgan/features/binary-io.h"
#include "vawgan/key-value.h"

namespace vawgan {

Eigen::VectorXd global_variance(const Matrix<double> &frames) {
  if (frames.rows() < 2) throw ConfigError("global_variance: need at least 2 frames");
  Eigen::RowVectorXd mean = frames.colwise().mean();
  Matrix<double> centered = frames.rowwise() - mean;
  return centered.array().square().colwise().mean().transpose();
}

namespace {

// Gaussian Gram matrix between the rows of a and b.
Eigen::MatrixXd Gram(const Matrix<double> &a, const Matrix<double> &b, double bandwidth) {
  Eigen::VectorXd na = a.rowwise().squaredNorm();
  Eigen::VectorXd nb = b.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = (-2.0 * a * b.transpose()).colwise() + na;
  d2.rowwise() += nb.transpose();
  const double inv = -1.0 / (2.0 * bandwidth * bandwidth);
  return (d2.cwiseMax(0.0) * inv).array().exp().matrix();
}

}  // namespace

double mmd(const Matrix<double> &a, const Matrix<double> &b, double bandwidth) {
  if (a.cols() != b.cols()) throw ShapeError("mmd: dimension mismatch");
  if (!(bandwidth > 0)) throw ConfigError("mmd: bandwidth must be positive");
  const Index m = a.rows(), n = b.rows();
  if (m < 2 || n < 2) throw ConfigError("mmd: need at least 2 samples per set");
  Eigen::MatrixXd kaa = Gram(a, a, bandwidth);
  Eigen::MatrixXd kbb = Gram(b, b, bandwidth);
  Eigen::MatrixXd kab = Gram(a, b, bandwidth);
  const double saa = kaa.sum() - kaa.trace();
  const double sbb = kbb.sum() - kbb.trace();
  if (m == n) {
    // Cross terms k(a_i, b_j) + k(a_j, b_i) summed over i != j.
    const double sab = 2.0 * (kab.sum() - kab.trace());
    return (saa + sbb - sab) / (double(m) * double(m - 1));
  }
  return saa / (double(m) * (m - 1)) + sbb / (double(n) * (n - 1)) - 2.0 * kab.mean();
}

double median_bandwidth(const Matrix<double> &a, const Matrix<double> &b) {
  Matrix<double> pooled(a.rows() + b.rows(), a.cols());
  pooled << a, b;
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(pooled.rows() * (pooled.rows() - 1) / 2));
  for (Index i = 0; i < pooled.rows(); ++i)
    for (Index j = i + 1; j < pooled.rows(); ++j) d.push_back((pooled.row(i) - pooled.row(j)).norm());
  if (d.empty()) throw ConfigError("median_bandwidth: need at least 2 points");
  auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  return *mid > 0 ? *mid : 1.0;
}

double w1_exact_1d(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ConfigError("w1_exact_1d: empty sample");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa.size() == sb.size()) {
    double acc = 0;
    for (std::size_t i = 0; i < sa.size(); ++i) acc += std::abs(sa[i] - sb[i]);
    return acc / static_cast<double>(sa.size());
  }
  // Integrate |F_a - F_b| over the merged support.
  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double prev = std::min(sa[0], sb[0]), acc = 0;
  while (i < sa.size() || j < sb.size()) {
    double next = (j >= sb.size() || (i < sa.size() && sa[i] <= sb[j])) ? sa[i] : sb[j];
    acc += std::abs(double(i) / na - double(j) / nb) * (next - prev);
    prev = next;
    while (i < sa.size() && sa[i] == next) ++i;
    while (j < sb.size() && sb[j] == next) ++j;
  }
  return acc;
}

Matrix<double> subsample_rows(const Matrix<double> &x, Index max_rows) {
  if (x.rows() <= max_rows) return x;
  const Index stride = (x.rows() + max_rows - 1) / max_rows;
  Matrix<double> out((x.rows() + stride - 1) / stride, x.cols());
  for (Index i = 0, r = 0; i < x.rows(); i += stride, ++r) out.row(r) = x.row(i);
  return out;
}

std::string report_to_csv(const EvalReport &r) {
  std::ostringstream os;
  os << "kind,dim,value\n";
  for (const auto &[kind, v] : r.curves)
    for (Index d = 0; d < v.size(); ++d) os << kind << ',' << d << ',' << format_double(v(d)) << '\n';
  for (const auto &[name, value] : r.metrics) os << name << ",," << format_double(value) << '\n';
  if (!r.config_digest.empty()) os << "config_digest,," << r.config_digest << '\n';
  return os.str();
}

EvalReport parse_report(const std::string &csv) {
  EvalReport r;
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) || line != "kind,dim,value")
    throw FormatError(FormatError::Kind::kBadMagic, "report: missing kind,dim,value header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw FormatError(FormatError::Kind::kInvalid, "report: malformed row: " + line);
    std::string kind = line.substr(0, c1), dim = line.substr(c1 + 1, c2 - c1 - 1), value = line.substr(c2 + 1);
    if (dim.empty()) {
      if (kind == "config_digest") r.config_digest = value;
      else r.metrics.emplace_back(kind, parse_double(kind, value));
      continue;
    }
    const long long d = parse_int(kind, dim);
    if (r.curves.empty() || r.curves.back().first != kind) r.curves.emplace_back(kind, Eigen::VectorXd());
    Eigen::VectorXd &v = r.curves.back().second;
    if (d != v.size()) throw FormatError(FormatError::Kind::kInvalid, "report: non-contiguous dims for " + kind);
    v.conservativeResize(v.size() + 1);
    v(v.size() - 1) = parse_double(kind, value);
  }
  return r;
}

void emit_report(const EvalReport &r, const std::string &path) {
  std::string csv = report_to_csv(r);
  WriteFileBytes(path, std::vector<char>(csv.begin(), csv.end()));
}

std::string config_digest(const std::string &text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vawgan
