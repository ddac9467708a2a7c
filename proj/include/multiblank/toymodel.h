// multiblank/toymodel.h
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

#ifndef MULTIBLANK_TOYMODEL_H_
#define MULTIBLANK_TOYMODEL_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multiblank/data.h"
#include "multiblank/decode.h"
#include "multiblank/loss.h"
#include "multiblank/numerics.h"

namespace multiblank {

// A deliberately small trainable transducer:
//   encoder   per-frame MLP, feature -> hidden (tanh) -> encoder_out
//   decoder   stateless, concatenated embeddings of the last two tokens
//   joint     additive projections -> tanh -> output width V + |N|
// Backpropagation is written out by hand so every gradient can be checked
// against finite differences.

struct ToyDims {
  int feature = 8;      // F
  int hidden = 32;      // H
  int encoder_out = 32; // E
  int embed = 16;       // D
  int joint = 32;       // J

  bool operator==(const ToyDims &other) const = default;
};

struct ToyModelParams {
  ToyDims dims;
  int vocab = 0;       // V; embedding row V is the begin-of-sequence token
  int num_blanks = 0;  // |N|

  Matrix enc_w1;                // H x F
  std::vector<double> enc_b1;   // H
  Matrix enc_w2;                // E x H
  std::vector<double> enc_b2;   // E
  Matrix embeddings;            // (V+1) x D
  Matrix joint_enc;             // J x E
  Matrix joint_ctx;             // J x 2D
  std::vector<double> joint_b;  // J
  Matrix out_w;                 // K x J
  std::vector<double> out_b;    // K

  int width() const { return vocab + num_blanks; }
};

struct TrainConfig {
  double sigma = 0.05;
  BlankSet blank_set{std::vector<int>{1}};
  double learning_rate = 0.01;
  double momentum = 0.9;
  int batch_size = 32;
  int steps = 800;
  std::uint64_t seed = 0;
  ToyDims dims;
};

// Named flat views over every parameter array, in a fixed order. Used by
// the optimizer, the checkpoint writer and finite-difference checks.
std::vector<std::pair<std::string, std::span<double>>> ParamViews(
    ToyModelParams &params);
std::vector<std::pair<std::string, std::span<const double>>> ParamViews(
    const ToyModelParams &params);

ToyModelParams ZerosLike(const ToyModelParams &params);

// Weights drawn uniform in [-s, s] with s = 1 / sqrt(fan_in); biases start
// at zero. Deterministic given the seed.
ToyModelParams InitParams(std::uint64_t seed, const ToyDims &dims, int vocab,
                          int num_blanks);

// z(t, u, .) = joint(encoder(frame t), context(u)) where context(u)
// concatenates the embeddings of labels[u-2] and labels[u-1]
// (begin-of-sequence padding for u < 2). Throws on label ids >= vocab.
ActivationLattice ForwardActivations(const ToyModelParams &params,
                                     const Matrix &frames,
                                     std::span<const int> labels);

// Loss of one utterance plus the gradient with respect to every
// parameter, chained through the joint, encoder and embeddings.
struct ToyGradResult {
  double loss = 0.0;
  ToyModelParams grad;
};
ToyGradResult ToyLossAndGrad(const ToyModelParams &params,
                             const Utterance &utterance,
                             const LossConfig &config);

// One momentum-SGD step over a batch: gradients are averaged across the
// feasible utterances, infeasible ones (U > 0 with no frames) are skipped
// and counted. velocity must have the same shapes as params.
struct TrainStepResult {
  double mean_loss = 0.0;
  int skipped = 0;
};
TrainStepResult TrainStep(ToyModelParams &params, ToyModelParams &velocity,
                          std::span<const Utterance> batch,
                          const TrainConfig &config);

// Full training loop: shuffled epochs, config.steps batches. Deterministic
// given seed + data + config.
struct TrainRun {
  ToyModelParams params;
  std::vector<double> loss_curve;  // mean batch loss per step
  int skipped = 0;
};
TrainRun Train(std::span<const Utterance> dataset, const TrainConfig &config,
               int vocab);

// Scorer over precomputed per-frame encoder outputs; the decode modules
// consume this. Uses the last two history tokens only.
Scorer MakeScorer(const ToyModelParams &params, const Matrix &frames);

// Checkpoint: dims, blank set, sigma and flat weight arrays as JSON,
// decimal full precision, with a format tag.
struct Checkpoint {
  ToyModelParams params;
  BlankSet blank_set{std::vector<int>{1}};
  double sigma = 0.05;
};

void SaveCheckpoint(const std::filesystem::path &path,
                    const Checkpoint &checkpoint);
Checkpoint LoadCheckpoint(const std::filesystem::path &path);

}  // namespace multiblank

#endif  // MULTIBLANK_TOYMODEL_H_
