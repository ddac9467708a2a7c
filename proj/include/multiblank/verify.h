// multiblank/verify.h
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

#ifndef MULTIBLANK_VERIFY_H_
#define MULTIBLANK_VERIFY_H_

#include <cstdint>
#include <vector>

#include "multiblank/loss.h"
#include "multiblank/rng.h"

namespace multiblank {

// Random-instance harness comparing the dynamic-programming loss against
// the brute-force path enumeration and analytic gradients against central
// finite differences. Drives the `verify` command and the test suites.

struct RandomInstance {
  ActivationLattice activations;
  std::vector<int> labels;
  BlankSet blank_set{std::vector<int>{1}};
};

// T in [1, max_T], U in [0, max_U], V in [1, max_V], N a random subset of
// {1, 2, 3, 4} containing 1, activations standard normal.
RandomInstance MakeRandomInstance(Rng &rng, int max_T, int max_U, int max_V,
                                  int max_blank_duration = 4);

struct VerifyOptions {
  int trials = 1000;       // loss comparisons
  int grad_trials = 100;   // finite-difference gradient comparisons
  int max_T = 5;
  int max_U = 3;
  int max_V = 5;
  std::vector<double> sigmas = {0.0, 0.05, 0.2};
  std::uint64_t seed = 0;
  double loss_tolerance = 1e-9;
  double grad_tolerance = 1e-4;  // relative
  double fd_step = 1e-5;
  // Test fixture: added to every DP loss before comparison, so a nonzero
  // value must trip the tolerance check.
  double corrupt_loss_by = 0.0;
};

struct VerifyOutcome {
  int loss_trials = 0;
  int grad_trials = 0;
  double max_loss_deviation = 0.0;      // |DP - brute force|
  double max_forward_backward_gap = 0.0;
  double max_grad_rel_error = 0.0;
  bool ok = false;
};

VerifyOutcome RunVerification(const VerifyOptions &options);

// max over coordinates of |a - b| / max(|a|, |b|, floor).
double MaxRelativeError(const Tensor3 &a, const Tensor3 &b,
                        double floor = 1e-6);

}  // namespace multiblank

#endif  // MULTIBLANK_VERIFY_H_
