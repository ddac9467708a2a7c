// multiblank/numerics.cc
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

#include "multiblank/numerics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace multiblank {

double LogSumExp(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("LogSumExp: empty input");
  }
  double max = *std::max_element(values.begin(), values.end());
  if (IsLogZero(max)) return kLogZero;
  double sum = 0.0;
  for (double v : values) {
    sum += std::exp(v - max);
  }
  return max + std::log(sum);
}

double LogSumExp(double a, double b) {
  if (a < b) std::swap(a, b);
  // a is the larger one; b - a <= 0 so exp never overflows.
  if (IsLogZero(a)) return kLogZero;
  return a + std::log1p(std::exp(b - a));
}

void LogSoftmax(std::span<const double> in, std::span<double> out) {
  if (in.empty()) {
    throw std::invalid_argument("LogSoftmax: empty input");
  }
  if (out.size() != in.size()) {
    throw std::invalid_argument("LogSoftmax: size mismatch");
  }
  for (double v : in) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("LogSoftmax: non-finite input");
    }
  }
  double max = *std::max_element(in.begin(), in.end());
  double sum = 0.0;
  for (double v : in) {
    sum += std::exp(v - max);
  }
  double log_denom = max + std::log(sum);
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = in[i] - log_denom;
  }
}

std::vector<double> LogSoftmax(std::span<const double> in) {
  std::vector<double> out(in.size());
  LogSoftmax(in, out);
  return out;
}

Tensor3::Tensor3(int d0, int d1, int d2, double fill)
    : d0_(d0), d1_(d1), d2_(d2) {
  if (d0 < 0 || d1 < 0 || d2 < 0) {
    throw std::invalid_argument("Tensor3: negative dimension");
  }
  data_.assign(static_cast<std::size_t>(d0) * d1 * d2, fill);
}

Matrix::Matrix(int rows, int cols, double fill) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("Matrix: negative dimension");
  }
  data_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

}  // namespace multiblank
