// vawgan/numerics/tensor.h

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

#ifndef VAWGAN_NUMERICS_TENSOR_H_
#define VAWGAN_NUMERICS_TENSOR_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vawgan {

using Index = Eigen::Index;

// Dense row-major storage. Batches are rows; feature maps of a 1-D
// convolution are laid out channel-major along the columns (c * L + l).
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// A named trainable tensor. `shape` is the logical extent list written to
/// checkpoints; `value` holds the same data as a rows x cols matrix.
template <typename Scalar>
struct Parameter {
  std::string name;
  std::vector<int> shape;
  Matrix<Scalar> value;

  Parameter() = default;
  Parameter(std::string n, std::vector<int> s, Index rows, Index cols)
      : name(std::move(n)), shape(std::move(s)), value(Matrix<Scalar>::Zero(rows, cols)) {}

  Index size() const { return value.size(); }
};

/// Seeded pseudo-random state. Identical (seed, counter) histories produce
/// identical draws on one platform.
class RngState {
 public:
  explicit RngState(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  double Normal() {
    ++counter_;
    return normal_(engine_);
  }
  double Uniform(double lo, double hi) {
    ++counter_;
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  // Uniform integer in [0, n).
  std::uint64_t Below(std::uint64_t n) {
    ++counter_;
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

template <typename Scalar>
Matrix<Scalar> sample_standard_normal(RngState &rng, Index rows, Index cols) {
  Matrix<Scalar> out(rows, cols);
  for (Index i = 0; i < out.size(); ++i) out.data()[i] = static_cast<Scalar>(rng.Normal());
  return out;
}

template <typename Scalar>
Matrix<Scalar> sample_uniform(RngState &rng, Index rows, Index cols, double lo, double hi) {
  Matrix<Scalar> out(rows, cols);
  for (Index i = 0; i < out.size(); ++i) out.data()[i] = static_cast<Scalar>(rng.Uniform(lo, hi));
  return out;
}

}  // namespace vawgan

#endif  // VAWGAN_NUMERICS_TENSOR_H_
