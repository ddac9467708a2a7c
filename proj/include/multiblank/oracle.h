// multiblank/oracle.h
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

#ifndef MULTIBLANK_ORACLE_H_
#define MULTIBLANK_ORACLE_H_

#include <span>
#include <utility>
#include <vector>

#include "multiblank/loss.h"
#include "multiblank/numerics.h"

namespace multiblank {

// Exhaustive, deliberately naive reference for the multi-blank loss.
// Enumerates every alignment path, scores each one as
//   weight(pi) = log P(pi) - sigma * |pi|
// and sums them, providing an independent check of the dynamic program.
// Used by tests and the `verify` command; never on the training path.

// One emission along a path: either the u-th target label (emitted while
// staying at the frame cursor) or a blank of duration m (advancing the
// cursor by m). `frame` is the cursor position when the emission is made.
struct PathStep {
  bool is_blank = false;
  int value = 0;  // label ordinal u for labels, duration m for blanks
  int frame = 0;

  bool operator==(const PathStep &other) const = default;
};

struct Path {
  std::vector<PathStep> steps;

  int length() const { return static_cast<int>(steps.size()); }
};

// Enumeration caps; past these the path count explodes and the oracle is
// pointless anyway.
inline constexpr int kOracleMaxT = 12;
inline constexpr int kOracleMaxU = 6;
inline constexpr int kOracleMaxBlanks = 4;

// Every valid path from (0, 0) to (T, U), exactly once, ordered
// lexicographically by emission sequence (label first, then blanks by
// ascending duration — the same order as the output index layout).
// Throws std::invalid_argument when a cap is exceeded.
std::vector<Path> EnumeratePaths(int T, int U, const BlankSet &blank_set);

// Sum of the under-normalized arc weights along the path. The
// -sigma * |pi| term is already inside each arc weight.
double PathWeight(const Path &path, const ArcWeightLattice &arcs,
                  std::span<const int> labels, const BlankSet &blank_set);

// -log sum over paths of exp(weight(pi)). Applies sigma at the path level
// (log P from plain log_softmax arcs, minus sigma * |pi|), a different
// algebraic route than the per-arc subtraction used by the DP loss.
// Throws std::invalid_argument when no valid path exists.
double BruteForceLoss(const ActivationLattice &activations,
                      std::span<const int> labels, const LossConfig &config);

// Central finite differences of BruteForceLoss, one coordinate at a time:
// (L(z + h e) - L(z - h e)) / 2h.
Tensor3 FiniteDiffGrad(const ActivationLattice &activations,
                       std::span<const int> labels, const LossConfig &config,
                       double h);

// The classic two-term transducer recursion, duration-1 blank only,
// written out directly (not via the generalized duration loop):
//   A(t, u) = LSE( A(t, u-1) + w(t, u-1, labels[u-1]),
//                  A(t-1, u) + w(t-1, u, blank) )
// Used to check that the multi-blank loss reduces to the standard one
// when N = {1}. The activation lattice must have exactly one blank.
double StandardRecursionLoss(const ActivationLattice &activations,
                             std::span<const int> labels, double sigma);

// (min |pi|, max |pi|) over all valid paths, by enumeration.
std::pair<int, int> PathLengthExtremes(int T, int U, const BlankSet &blank_set);

}  // namespace multiblank

#endif  // MULTIBLANK_ORACLE_H_
