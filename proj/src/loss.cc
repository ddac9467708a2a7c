// multiblank/loss.cc
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

#include "multiblank/loss.h"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace multiblank {

namespace {

void CheckLabels(std::span<const int> labels, int U, int V) {
  if (static_cast<int>(labels.size()) != U) {
    throw std::invalid_argument("label count does not match lattice U");
  }
  for (int id : labels) {
    if (id < 0 || id >= V) {
      throw std::invalid_argument("label id out of vocabulary range");
    }
  }
}

void CheckBlankSet(const ArcWeightLattice &arcs, const BlankSet &blank_set) {
  if (blank_set.size() != arcs.num_blanks) {
    throw std::invalid_argument(
        "blank set size does not match lattice output width");
  }
}

}  // namespace

BlankSet::BlankSet(std::vector<int> durations)
    : durations_(std::move(durations)) {
  if (durations_.empty()) {
    throw std::invalid_argument("BlankSet: empty duration set");
  }
  int prev = 0;
  bool has_one = false;
  for (int d : durations_) {
    if (d < 1) throw std::invalid_argument("BlankSet: durations must be >= 1");
    if (d <= prev) {
      throw std::invalid_argument("BlankSet: durations must strictly increase");
    }
    if (d == 1) has_one = true;
    prev = d;
  }
  if (!has_one) throw std::invalid_argument("BlankSet: must contain 1");
}

BlankSet BlankSet::Parse(const std::string &text) {
  std::vector<int> durations;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(item, &pos);
    } catch (const std::exception &) {
      throw std::invalid_argument("BlankSet: cannot parse '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) pos++;
    if (pos != item.size()) {
      throw std::invalid_argument("BlankSet: cannot parse '" + item + "'");
    }
    durations.push_back(value);
  }
  return BlankSet(durations);
}

ActivationLattice::ActivationLattice(int T_, int U_, int V_, int num_blanks_)
    : T(T_), U(U_), V(V_), num_blanks(num_blanks_) {
  if (T < 0 || U < 0 || V < 1 || num_blanks < 1) {
    throw std::invalid_argument("ActivationLattice: invalid dimensions");
  }
  values = Tensor3(T, U + 1, V + num_blanks);
}

ArcWeightLattice UnderNormalize(const ActivationLattice &activations,
                                double sigma) {
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("UnderNormalize: sigma must be >= 0");
  }
  ArcWeightLattice arcs;
  arcs.T = activations.T;
  arcs.U = activations.U;
  arcs.V = activations.V;
  arcs.num_blanks = activations.num_blanks;
  arcs.sigma = sigma;
  arcs.values = Tensor3(arcs.T, arcs.U + 1, arcs.width());
  for (int t = 0; t < arcs.T; ++t) {
    for (int u = 0; u <= arcs.U; ++u) {
      auto in = activations.values.Slice(t, u);
      auto out = arcs.values.Slice(t, u);
      LogSoftmax(in, out);  // throws on non-finite activations
      for (double &w : out) w -= sigma;
    }
  }
  return arcs;
}

ForwardResult Forward(const ArcWeightLattice &arcs, std::span<const int> labels,
                      const BlankSet &blank_set) {
  CheckBlankSet(arcs, blank_set);
  CheckLabels(labels, arcs.U, arcs.V);
  const int T = arcs.T, U = arcs.U, V = arcs.V;

  ForwardResult result;
  result.alpha = Matrix(T + 1, U + 1, kLogZero);
  result.alpha(0, 0) = 0.0;

  std::vector<double> terms;
  terms.reserve(blank_set.size() + 1);
  for (int t = 0; t <= T; ++t) {
    for (int u = 0; u <= U; ++u) {
      if (t == 0 && u == 0) continue;
      terms.clear();
      // Label arc into (t, u) comes from (t, u-1), reads frame t.
      if (u > 0 && t < T) {
        double a = result.alpha(t, u - 1);
        if (!IsLogZero(a)) {
          terms.push_back(a + arcs.values(t, u - 1, labels[u - 1]));
        }
      }
      // Blank arc of duration m comes from (t-m, u), reads frame t-m.
      for (int j = 0; j < blank_set.size(); ++j) {
        int m = blank_set.duration(j);
        if (t - m < 0) break;  // durations ascend
        double a = result.alpha(t - m, u);
        if (!IsLogZero(a)) {
          terms.push_back(a + arcs.values(t - m, u, V + j));
        }
      }
      if (!terms.empty()) {
        result.alpha(t, u) = LogSumExp(terms);
      }
    }
  }
  // Degenerate empty lattice: (0, 0) is already terminal.
  result.total = result.alpha(T, U);
  result.feasible = !IsLogZero(result.total);
  return result;
}

BackwardResult Backward(const ArcWeightLattice &arcs,
                        std::span<const int> labels,
                        const BlankSet &blank_set) {
  CheckBlankSet(arcs, blank_set);
  CheckLabels(labels, arcs.U, arcs.V);
  const int T = arcs.T, U = arcs.U, V = arcs.V;

  BackwardResult result;
  result.beta = Matrix(T + 1, U + 1, kLogZero);
  result.beta(T, U) = 0.0;

  std::vector<double> terms;
  terms.reserve(blank_set.size() + 1);
  for (int t = T; t >= 0; --t) {
    for (int u = U; u >= 0; --u) {
      if (t == T && u == U) continue;
      terms.clear();
      // Label arc at (t, u) reads frame t, requires t < T.
      if (u < U && t < T) {
        double b = result.beta(t, u + 1);
        if (!IsLogZero(b)) {
          terms.push_back(b + arcs.values(t, u, labels[u]));
        }
      }
      // Blank arc of duration m at (t, u) requires t + m <= T.
      for (int j = 0; j < blank_set.size(); ++j) {
        int m = blank_set.duration(j);
        if (t + m > T) break;
        double b = result.beta(t + m, u);
        if (!IsLogZero(b)) {
          terms.push_back(b + arcs.values(t, u, V + j));
        }
      }
      if (!terms.empty()) {
        result.beta(t, u) = LogSumExp(terms);
      }
    }
  }
  result.total = result.beta(0, 0);
  result.feasible = !IsLogZero(result.total);
  return result;
}

Tensor3 Occupancy(const Matrix &alpha, const Matrix &beta,
                  const ArcWeightLattice &arcs, std::span<const int> labels,
                  const BlankSet &blank_set, double total) {
  CheckBlankSet(arcs, blank_set);
  CheckLabels(labels, arcs.U, arcs.V);
  const int T = arcs.T, U = arcs.U, V = arcs.V;
  if (alpha.rows() != T + 1 || alpha.cols() != U + 1 ||
      beta.rows() != T + 1 || beta.cols() != U + 1) {
    throw std::invalid_argument("Occupancy: lattice shape mismatch");
  }

  Tensor3 gamma(T, U + 1, arcs.width(), 0.0);
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      double a = alpha(t, u);
      if (IsLogZero(a)) continue;
      if (u < U) {
        // gamma(label) = exp(alpha(t,u) + w + beta(t, u+1) - total)
        gamma(t, u, labels[u]) =
            std::exp(a + arcs.values(t, u, labels[u]) + beta(t, u + 1) - total);
      }
      for (int j = 0; j < blank_set.size(); ++j) {
        int m = blank_set.duration(j);
        if (t + m > T) break;
        gamma(t, u, V + j) =
            std::exp(a + arcs.values(t, u, V + j) + beta(t + m, u) - total);
      }
    }
  }
  return gamma;
}

LossResult LossAndGrad(const ActivationLattice &activations,
                       std::span<const int> labels, const LossConfig &config) {
  ArcWeightLattice arcs = UnderNormalize(activations, config.sigma);
  ForwardResult fwd = Forward(arcs, labels, config.blank_set);
  if (!fwd.feasible) {
    std::ostringstream msg;
    msg << "LossAndGrad: no valid path for T=" << activations.T
        << ", U=" << activations.U << ", N={";
    for (int j = 0; j < config.blank_set.size(); ++j) {
      msg << (j ? "," : "") << config.blank_set.duration(j);
    }
    msg << "}";
    throw std::invalid_argument(msg.str());
  }
  BackwardResult bwd = Backward(arcs, labels, config.blank_set);

  const int T = activations.T, U = activations.U, K = activations.width();
  Tensor3 gamma = Occupancy(fwd.alpha, bwd.beta, arcs, labels,
                            config.blank_set, fwd.total);

  // Chain the arc-level gradient (-gamma per used arc) through the
  // per-slice log_softmax:
  //   d loss / d z(t,u,k) = softmax(z(t,u,.))(k) * G(t,u) - gamma(t,u,k)
  // softmax(z) = exp(arc weight + sigma) since w = log_softmax(z) - sigma.
  Tensor3 grad(T, U + 1, K, 0.0);
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      auto g_slice = gamma.Slice(t, u);
      double mass = 0.0;
      for (double g : g_slice) mass += g;
      if (mass == 0.0) continue;
      auto w_slice = arcs.values.Slice(t, u);
      auto out = grad.Slice(t, u);
      for (int k = 0; k < K; ++k) {
        double softmax = std::exp(w_slice[k] + config.sigma);
        out[k] = softmax * mass - g_slice[k];
      }
    }
  }

  LossResult result;
  result.loss = -fwd.total;
  result.total = fwd.total;
  result.grad = std::move(grad);
  result.lattices.alpha = std::move(fwd.alpha);
  result.lattices.beta = std::move(bwd.beta);
  return result;
}

}  // namespace multiblank
