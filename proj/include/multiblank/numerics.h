// multiblank/numerics.h
//
// Copyright 2026  The multiblank authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MULTIBLANK_NUMERICS_H_
#define MULTIBLANK_NUMERICS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace multiblank {

// Log-domain zero. Kept finite (rather than -inf) so that sums of
// log-weights never produce NaN; anything at or below kLogZero / 2 is
// treated as unreachable.
inline constexpr double kLogZero = -1e30;

inline bool IsLogZero(double v) { return v <= kLogZero / 2; }

// log(sum_i exp(values[i])), computed with max-subtraction.
// Returns kLogZero when every input is kLogZero. Throws
// std::invalid_argument on empty input.
double LogSumExp(std::span<const double> values);

// Two-term special case, used in the DP inner loops.
double LogSumExp(double a, double b);

// Writes log_softmax(in) to out (in and out may alias). All inputs must
// be finite; throws std::invalid_argument otherwise.
void LogSoftmax(std::span<const double> in, std::span<double> out);

std::vector<double> LogSoftmax(std::span<const double> in);

// Dense row-major rank-3 array of doubles. Index order is (d0, d1, d2);
// for lattices this is (t, u, k), so the flat index of (t, u, k) is
// (t * d1 + u) * d2 + k.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int d0, int d1, int d2, double fill = 0.0);

  double &operator()(int i, int j, int k) {
    return data_[(static_cast<std::size_t>(i) * d1_ + j) * d2_ + k];
  }
  double operator()(int i, int j, int k) const {
    return data_[(static_cast<std::size_t>(i) * d1_ + j) * d2_ + k];
  }

  // The length-d2 vector at (i, j).
  std::span<double> Slice(int i, int j) {
    return {data_.data() + (static_cast<std::size_t>(i) * d1_ + j) * d2_,
            static_cast<std::size_t>(d2_)};
  }
  std::span<const double> Slice(int i, int j) const {
    return {data_.data() + (static_cast<std::size_t>(i) * d1_ + j) * d2_,
            static_cast<std::size_t>(d2_)};
  }

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }
  std::size_t size() const { return data_.size(); }

  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

 private:
  int d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<double> data_;
};

// Dense row-major matrix, used for alpha/beta grids, frame matrices and
// toy-model weights.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);

  double &operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  std::span<double> Row(int r) {
    return {data_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  std::span<const double> Row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols_,
            static_cast<std::size_t>(cols_)};
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

}  // namespace multiblank

#endif  // MULTIBLANK_NUMERICS_H_
