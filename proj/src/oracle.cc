// multiblank/oracle.cc
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

#include "multiblank/oracle.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace multiblank {

namespace {

void CheckCaps(int T, int U, const BlankSet &blank_set) {
  if (T > kOracleMaxT) {
    throw std::invalid_argument("oracle: T exceeds cap " +
                                std::to_string(kOracleMaxT));
  }
  if (U > kOracleMaxU) {
    throw std::invalid_argument("oracle: U exceeds cap " +
                                std::to_string(kOracleMaxU));
  }
  if (blank_set.size() > kOracleMaxBlanks) {
    throw std::invalid_argument("oracle: |N| exceeds cap " +
                                std::to_string(kOracleMaxBlanks));
  }
}

// Depth-first enumeration. Arc order per state: the label arc first, then
// blanks by ascending duration, which yields lexicographic path order.
void Enumerate(int t, int u, int T, int U, const BlankSet &blank_set,
               std::vector<PathStep> &prefix, std::vector<Path> &out) {
  if (t == T && u == U) {
    out.push_back(Path{prefix});
    return;
  }
  if (u < U && t < T) {
    prefix.push_back(PathStep{false, u, t});
    Enumerate(t, u + 1, T, U, blank_set, prefix, out);
    prefix.pop_back();
  }
  for (int j = 0; j < blank_set.size(); ++j) {
    int m = blank_set.duration(j);
    if (t + m > T) break;
    prefix.push_back(PathStep{true, m, t});
    Enumerate(t + m, u, T, U, blank_set, prefix, out);
    prefix.pop_back();
  }
}

// log P(pi) from plain log-softmax arc weights (sigma not applied).
double PlainLogProb(const Path &path, const Tensor3 &log_probs,
                    std::span<const int> labels, int V,
                    const BlankSet &blank_set) {
  double w = 0.0;
  int u = 0;
  for (const PathStep &step : path.steps) {
    if (step.is_blank) {
      int j = -1;
      for (int i = 0; i < blank_set.size(); ++i) {
        if (blank_set.duration(i) == step.value) j = i;
      }
      if (j < 0) throw std::invalid_argument("oracle: unknown blank duration");
      w += log_probs(step.frame, u, V + j);
    } else {
      w += log_probs(step.frame, u, labels[u]);
      ++u;
    }
  }
  return w;
}

}  // namespace

std::vector<Path> EnumeratePaths(int T, int U, const BlankSet &blank_set) {
  if (T < 0 || U < 0) throw std::invalid_argument("oracle: negative T or U");
  CheckCaps(T, U, blank_set);
  std::vector<Path> out;
  std::vector<PathStep> prefix;
  Enumerate(0, 0, T, U, blank_set, prefix, out);
  return out;
}

double PathWeight(const Path &path, const ArcWeightLattice &arcs,
                  std::span<const int> labels, const BlankSet &blank_set) {
  if (static_cast<int>(labels.size()) != arcs.U) {
    throw std::invalid_argument("PathWeight: label count mismatch");
  }
  if (blank_set.size() != arcs.num_blanks) {
    throw std::invalid_argument("PathWeight: blank set size mismatch");
  }
  double w = 0.0;
  int t = 0, u = 0;
  for (const PathStep &step : path.steps) {
    if (step.frame != t || t >= arcs.T) {
      throw std::invalid_argument("PathWeight: path does not fit lattice");
    }
    if (step.is_blank) {
      int j = -1;
      for (int i = 0; i < blank_set.size(); ++i) {
        if (blank_set.duration(i) == step.value) j = i;
      }
      if (j < 0 || t + step.value > arcs.T) {
        throw std::invalid_argument("PathWeight: path does not fit lattice");
      }
      w += arcs.values(t, u, arcs.V + j);
      t += step.value;
    } else {
      if (u >= arcs.U) {
        throw std::invalid_argument("PathWeight: too many labels in path");
      }
      w += arcs.values(t, u, labels[u]);
      ++u;
    }
  }
  if (t != arcs.T || u != arcs.U) {
    throw std::invalid_argument("PathWeight: path does not reach terminal");
  }
  return w;
}

double BruteForceLoss(const ActivationLattice &activations,
                      std::span<const int> labels, const LossConfig &config) {
  CheckCaps(activations.T, activations.U, config.blank_set);
  if (config.blank_set.size() != activations.num_blanks) {
    throw std::invalid_argument("BruteForceLoss: blank set size mismatch");
  }
  const int T = activations.T, U = activations.U, V = activations.V;

  // Plain log-softmax arc probabilities; sigma enters per path below.
  Tensor3 log_probs(T, U + 1, activations.width());
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      LogSoftmax(activations.values.Slice(t, u), log_probs.Slice(t, u));
    }
  }

  std::vector<Path> paths = EnumeratePaths(T, U, config.blank_set);
  if (paths.empty()) {
    throw std::invalid_argument("BruteForceLoss: no valid path");
  }
  std::vector<double> weights;
  weights.reserve(paths.size());
  for (const Path &path : paths) {
    // weight(pi) = log P(pi) - sigma * |pi|
    weights.push_back(PlainLogProb(path, log_probs, labels, V,
                                   config.blank_set) -
                      config.sigma * path.length());
  }
  return -LogSumExp(weights);
}

Tensor3 FiniteDiffGrad(const ActivationLattice &activations,
                       std::span<const int> labels, const LossConfig &config,
                       double h) {
  if (!(h > 0.0)) throw std::invalid_argument("FiniteDiffGrad: h must be > 0");
  ActivationLattice probe = activations;
  Tensor3 grad(activations.T, activations.U + 1, activations.width());
  for (std::size_t i = 0; i < probe.values.data().size(); ++i) {
    double saved = probe.values.data()[i];
    probe.values.data()[i] = saved + h;
    double up = BruteForceLoss(probe, labels, config);
    probe.values.data()[i] = saved - h;
    double down = BruteForceLoss(probe, labels, config);
    probe.values.data()[i] = saved;
    grad.data()[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

double StandardRecursionLoss(const ActivationLattice &activations,
                             std::span<const int> labels, double sigma) {
  if (activations.num_blanks != 1) {
    throw std::invalid_argument(
        "StandardRecursionLoss: requires exactly one blank");
  }
  const int T = activations.T, U = activations.U, V = activations.V;
  if (static_cast<int>(labels.size()) != U) {
    throw std::invalid_argument("StandardRecursionLoss: label count mismatch");
  }

  Tensor3 w(T, U + 1, V + 1);
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      LogSoftmax(activations.values.Slice(t, u), w.Slice(t, u));
      for (double &x : w.Slice(t, u)) x -= sigma;
    }
  }

  // A(t, u) = LSE(A(t, u-1) + w(t, u-1, label), A(t-1, u) + w(t-1, u, blank))
  Matrix A(T + 1, U + 1, kLogZero);
  A(0, 0) = 0.0;
  for (int t = 0; t <= T; ++t) {
    for (int u = 0; u <= U; ++u) {
      if (t == 0 && u == 0) continue;
      double from_label = kLogZero;
      double from_blank = kLogZero;
      if (u > 0 && t < T && !IsLogZero(A(t, u - 1))) {
        from_label = A(t, u - 1) + w(t, u - 1, labels[u - 1]);
      }
      if (t > 0 && !IsLogZero(A(t - 1, u))) {
        from_blank = A(t - 1, u) + w(t - 1, u, V);
      }
      A(t, u) = LogSumExp(from_label, from_blank);
    }
  }
  if (IsLogZero(A(T, U))) {
    throw std::invalid_argument("StandardRecursionLoss: no valid path");
  }
  return -A(T, U);
}

std::pair<int, int> PathLengthExtremes(int T, int U,
                                       const BlankSet &blank_set) {
  std::vector<Path> paths = EnumeratePaths(T, U, blank_set);
  if (paths.empty()) {
    throw std::invalid_argument("PathLengthExtremes: no valid path");
  }
  int lo = paths.front().length(), hi = lo;
  for (const Path &path : paths) {
    lo = std::min(lo, path.length());
    hi = std::max(hi, path.length());
  }
  return {lo, hi};
}

}  // namespace multiblank
