// multiblank/verify.cc
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

#include "multiblank/verify.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "multiblank/oracle.h"

namespace multiblank {

RandomInstance MakeRandomInstance(Rng &rng, int max_T, int max_U, int max_V,
                                  int max_blank_duration) {
  RandomInstance inst;
  std::vector<int> durations{1};
  for (int d = 2; d <= max_blank_duration; ++d) {
    if (rng.Uniform() < 0.5) durations.push_back(d);
  }
  inst.blank_set = BlankSet(durations);

  int T = rng.UniformInt(1, max_T);
  int U = rng.UniformInt(0, max_U);
  int V = rng.UniformInt(1, max_V);
  inst.activations = ActivationLattice(T, U, V, inst.blank_set.size());
  for (double &z : inst.activations.values.data()) {
    z = rng.Gaussian(0.0, 1.0);
  }
  inst.labels.resize(U);
  for (int &id : inst.labels) id = rng.UniformInt(0, V - 1);
  return inst;
}

double MaxRelativeError(const Tensor3 &a, const Tensor3 &b, double floor) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("MaxRelativeError: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double x = a.data()[i], y = b.data()[i];
    double denom = std::max({std::abs(x), std::abs(y), floor});
    worst = std::max(worst, std::abs(x - y) / denom);
  }
  return worst;
}

VerifyOutcome RunVerification(const VerifyOptions &options) {
  if (options.trials < 0 || options.grad_trials < 0) {
    throw std::invalid_argument("RunVerification: negative trial count");
  }
  if (options.max_T > kOracleMaxT || options.max_U > kOracleMaxU) {
    throw std::invalid_argument(
        "RunVerification: sizes exceed the oracle enumeration caps");
  }
  if (options.sigmas.empty()) {
    throw std::invalid_argument("RunVerification: no sigma values");
  }

  Rng rng(options.seed);
  VerifyOutcome outcome;
  for (int trial = 0; trial < options.trials; ++trial) {
    RandomInstance inst =
        MakeRandomInstance(rng, options.max_T, options.max_U, options.max_V);
    LossConfig config{options.sigmas[trial % options.sigmas.size()],
                      inst.blank_set};

    LossResult dp = LossAndGrad(inst.activations, inst.labels, config);
    double dp_loss = dp.loss + options.corrupt_loss_by;
    double oracle_loss = BruteForceLoss(inst.activations, inst.labels, config);
    outcome.max_loss_deviation =
        std::max(outcome.max_loss_deviation, std::abs(dp_loss - oracle_loss));

    ArcWeightLattice arcs = UnderNormalize(inst.activations, config.sigma);
    ForwardResult fwd = Forward(arcs, inst.labels, config.blank_set);
    BackwardResult bwd = Backward(arcs, inst.labels, config.blank_set);
    outcome.max_forward_backward_gap =
        std::max(outcome.max_forward_backward_gap,
                 std::abs(fwd.total - bwd.total));

    if (trial < options.grad_trials) {
      Tensor3 fd = FiniteDiffGrad(inst.activations, inst.labels, config,
                                  options.fd_step);
      outcome.max_grad_rel_error = std::max(
          outcome.max_grad_rel_error, MaxRelativeError(dp.grad, fd));
      ++outcome.grad_trials;
    }
    ++outcome.loss_trials;
  }

  outcome.ok = outcome.max_loss_deviation <= options.loss_tolerance &&
               outcome.max_forward_backward_gap <= options.loss_tolerance &&
               outcome.max_grad_rel_error <= options.grad_tolerance;
  return outcome;
}

}  // namespace multiblank
