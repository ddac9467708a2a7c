// multiblank/loss.h
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

#ifndef MULTIBLANK_LOSS_H_
#define MULTIBLANK_LOSS_H_

#include <span>
#include <string>
#include <vector>

#include "multiblank/numerics.h"

namespace multiblank {

// Transducer loss with duration-carrying blank symbols.
//
// Lattice convention used throughout:
//   - State (t, u) means "t frames fully consumed, u labels emitted".
//     Start state is (0, 0), terminal state is (T, U).
//   - A label arc at (t, u) reads frame t, requires t < T, and moves to
//     (t, u+1) with weight w(t, u, labels[u]).
//   - A blank arc of duration m at (t, u) reads frame t, requires
//     t + m <= T, and moves to (t + m, u) with weight w(t, u, V + j)
//     where m is the j-th duration of the blank set.
//   - Transitions that would fall off the lattice are omitted, so every
//     path ends with a blank arc landing exactly on t = T.
//
// Output index layout of each (t, u) slice: indices [0, V) are labels,
// index V + j is the blank with the j-th smallest duration; V is always
// the standard (duration-1) blank.

// Ordered set of supported blank durations. Always contains 1.
class BlankSet {
 public:
  // durations must be strictly increasing, positive, and contain 1.
  explicit BlankSet(std::vector<int> durations);

  // Parses a comma-separated list such as "1,2,4".
  static BlankSet Parse(const std::string &text);

  const std::vector<int> &durations() const { return durations_; }
  int size() const { return static_cast<int>(durations_.size()); }
  int duration(int j) const { return durations_[j]; }
  int max_duration() const { return durations_.back(); }

  bool operator==(const BlankSet &other) const = default;

 private:
  std::vector<int> durations_;
};

struct LossConfig {
  // Under-normalization strength; 0 recovers the standard normalized loss.
  double sigma = 0.05;
  BlankSet blank_set{std::vector<int>{1}};
};

// Raw joint-network outputs z(t, u, k), shape (T, U+1, V + |N|).
struct ActivationLattice {
  int T = 0;          // frame count
  int U = 0;          // label count
  int V = 0;          // vocabulary size, labels only
  int num_blanks = 0; // |N|
  Tensor3 values;     // (T, U+1, V + num_blanks)

  ActivationLattice() = default;
  // Zero-filled. T = 0 is permitted so that infeasible instances can be
  // represented; V >= 1 and num_blanks >= 1 are required.
  ActivationLattice(int T, int U, int V, int num_blanks);

  int width() const { return V + num_blanks; }
};

// Per-slice log_softmax of an ActivationLattice minus sigma; each slice
// exp-sums to exp(-sigma).
struct ArcWeightLattice {
  int T = 0, U = 0, V = 0, num_blanks = 0;
  double sigma = 0.0;
  Tensor3 values;

  int width() const { return V + num_blanks; }
};

// Forward/backward log-weights over the alignment lattice, both of shape
// (T+1) x (U+1). alpha(0,0) = 0, beta(T,U) = 0; unreachable states hold
// kLogZero; alpha(T,U) == beta(0,0) == total path log-sum.
struct AlphaBetaLattice {
  Matrix alpha;
  Matrix beta;
};

struct ForwardResult {
  Matrix alpha;  // (T+1) x (U+1)
  double total = kLogZero;
  bool feasible = false;
};

struct BackwardResult {
  Matrix beta;  // (T+1) x (U+1)
  double total = kLogZero;
  bool feasible = false;
};

struct LossResult {
  double loss = 0.0;  // -(total path log-sum); non-negative
  Tensor3 grad;       // d loss / d z(t,u,k), same shape as the activations
  AlphaBetaLattice lattices;
  double total = kLogZero;
};

// Applies log_softmax to every (t, u) slice and subtracts sigma. The
// per-slice argmax is unchanged for every sigma. Throws
// std::invalid_argument on non-finite activations or sigma < 0.
ArcWeightLattice UnderNormalize(const ActivationLattice &activations,
                                double sigma);

// Forward recursion:
//   alpha(t, u) = LSE( alpha(t, u-1) + w(t, u-1, labels[u-1]),   [t < T]
//                      sum over m in N of
//                      alpha(t-m, u) + w(t-m, u, blank_m) )      [t >= m]
// total = alpha(T, U). Returns feasible = false (total = kLogZero) when no
// valid path exists, e.g. U > 0 with T = 0.
ForwardResult Forward(const ArcWeightLattice &arcs, std::span<const int> labels,
                      const BlankSet &blank_set);

// Backward recursion:
//   beta(t, u) = LSE( beta(t, u+1) + w(t, u, labels[u]),         [t < T]
//                     sum over m in N of
//                     beta(t+m, u) + w(t, u, blank_m) )          [t+m <= T]
// beta(T, U) = 0; total = beta(0, 0) and agrees with the forward total.
BackwardResult Backward(const ArcWeightLattice &arcs,
                        std::span<const int> labels,
                        const BlankSet &blank_set);

// Arc posteriors: for each existing arc from (t, u) with output k and
// destination s', gamma(t, u, k) = exp(alpha(t,u) + w(t,u,k) + beta(s')
// - total). Nonexistent arcs (wrong label, out-of-range blank) are 0.
Tensor3 Occupancy(const Matrix &alpha, const Matrix &beta,
                  const ArcWeightLattice &arcs, std::span<const int> labels,
                  const BlankSet &blank_set, double total);

// Loss and analytic gradient with respect to the raw activations:
//   loss = -(forward total)
//   d loss / d z(t,u,k) = softmax(z(t,u,.))(k) * G(t,u) - gamma(t,u,k)
// where G(t,u) = sum_k gamma(t,u,k). Throws std::invalid_argument when no
// valid path exists, naming (T, U, N).
LossResult LossAndGrad(const ActivationLattice &activations,
                       std::span<const int> labels, const LossConfig &config);

}  // namespace multiblank

#endif  // MULTIBLANK_LOSS_H_
