// multiblank/toymodel.cc
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

#include "multiblank/toymodel.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "json.hpp"
#include "multiblank/rng.h"

namespace multiblank {

namespace {

// y += W x
void MatVecAcc(const Matrix &w, std::span<const double> x,
               std::span<double> y) {
  for (int r = 0; r < w.rows(); ++r) {
    double acc = 0.0;
    auto row = w.Row(r);
    for (int c = 0; c < w.cols(); ++c) acc += row[c] * x[c];
    y[r] += acc;
  }
}

// y += W^T x
void MatTVecAcc(const Matrix &w, std::span<const double> x,
                std::span<double> y) {
  for (int r = 0; r < w.rows(); ++r) {
    auto row = w.Row(r);
    double xr = x[r];
    for (int c = 0; c < w.cols(); ++c) y[c] += row[c] * xr;
  }
}

// W += a b^T
void OuterAcc(Matrix &w, std::span<const double> a, std::span<const double> b) {
  for (int r = 0; r < w.rows(); ++r) {
    auto row = w.Row(r);
    double ar = a[r];
    for (int c = 0; c < w.cols(); ++c) row[c] += ar * b[c];
  }
}

void CheckDims(const ToyDims &dims, int vocab, int num_blanks) {
  if (dims.feature < 1 || dims.hidden < 1 || dims.encoder_out < 1 ||
      dims.embed < 1 || dims.joint < 1 || vocab < 1 || num_blanks < 1) {
    throw std::invalid_argument("toy model: all dimensions must be positive");
  }
}

void FillUniform(Rng &rng, std::span<double> values, int fan_in) {
  double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
  for (double &v : values) v = rng.Uniform(-s, s);
}

// Forward caches for one utterance, reused by the backward pass.
struct ForwardCache {
  Matrix enc_hidden;   // T x H, tanh already applied
  Matrix enc_out;      // T x E
  Matrix joint_from_enc;  // T x J, joint_enc * enc_out[t]
  Matrix context;      // (U+1) x 2D
  Matrix joint_from_ctx;  // (U+1) x J
  Tensor3 joint_hidden;   // T x (U+1) x J, tanh already applied
};

int ContextToken(std::span<const int> labels, int u, int back, int bos) {
  int idx = u - back;  // back = 2 or 1
  return idx >= 0 ? labels[idx] : bos;
}

ActivationLattice RunForward(const ToyModelParams &params,
                             const Matrix &frames, std::span<const int> labels,
                             int num_blanks, ForwardCache *cache) {
  const ToyDims &d = params.dims;
  if (frames.cols() != d.feature) {
    throw std::invalid_argument("toy model: frame width != feature dim");
  }
  for (int id : labels) {
    if (id < 0 || id >= params.vocab) {
      throw std::invalid_argument("toy model: label id out of range");
    }
  }
  const int T = frames.rows();
  const int U = static_cast<int>(labels.size());
  const int K = params.width();

  ForwardCache local;
  ForwardCache &c = cache ? *cache : local;
  c.enc_hidden = Matrix(T, d.hidden);
  c.enc_out = Matrix(T, d.encoder_out);
  c.joint_from_enc = Matrix(T, d.joint);
  c.context = Matrix(U + 1, 2 * d.embed);
  c.joint_from_ctx = Matrix(U + 1, d.joint);
  c.joint_hidden = Tensor3(T, U + 1, d.joint);

  for (int t = 0; t < T; ++t) {
    auto h = c.enc_hidden.Row(t);
    for (int i = 0; i < d.hidden; ++i) h[i] = params.enc_b1[i];
    MatVecAcc(params.enc_w1, frames.Row(t), h);
    for (double &v : h) v = std::tanh(v);
    auto e = c.enc_out.Row(t);
    for (int i = 0; i < d.encoder_out; ++i) e[i] = params.enc_b2[i];
    MatVecAcc(params.enc_w2, h, e);
    MatVecAcc(params.joint_enc, e, c.joint_from_enc.Row(t));
  }
  const int bos = params.vocab;
  for (int u = 0; u <= U; ++u) {
    auto ctx = c.context.Row(u);
    auto older = params.embeddings.Row(ContextToken(labels, u, 2, bos));
    auto newer = params.embeddings.Row(ContextToken(labels, u, 1, bos));
    for (int i = 0; i < d.embed; ++i) ctx[i] = older[i];
    for (int i = 0; i < d.embed; ++i) ctx[d.embed + i] = newer[i];
    MatVecAcc(params.joint_ctx, ctx, c.joint_from_ctx.Row(u));
  }

  ActivationLattice acts(T, U, params.vocab, num_blanks);
  std::vector<double> q(d.joint);
  for (int t = 0; t < T; ++t) {
    auto a = c.joint_from_enc.Row(t);
    for (int u = 0; u <= U; ++u) {
      auto b = c.joint_from_ctx.Row(u);
      auto jh = c.joint_hidden.Slice(t, u);
      for (int i = 0; i < d.joint; ++i) {
        jh[i] = std::tanh(a[i] + b[i] + params.joint_b[i]);
      }
      auto z = acts.values.Slice(t, u);
      for (int k = 0; k < K; ++k) z[k] = params.out_b[k];
      MatVecAcc(params.out_w, jh, z);
    }
  }
  return acts;
}

}  // namespace

std::vector<std::pair<std::string, std::span<double>>> ParamViews(
    ToyModelParams &params) {
  return {
      {"enc_w1", params.enc_w1.data()},
      {"enc_b1", params.enc_b1},
      {"enc_w2", params.enc_w2.data()},
      {"enc_b2", params.enc_b2},
      {"embeddings", params.embeddings.data()},
      {"joint_enc", params.joint_enc.data()},
      {"joint_ctx", params.joint_ctx.data()},
      {"joint_b", params.joint_b},
      {"out_w", params.out_w.data()},
      {"out_b", params.out_b},
  };
}

std::vector<std::pair<std::string, std::span<const double>>> ParamViews(
    const ToyModelParams &params) {
  std::vector<std::pair<std::string, std::span<const double>>> views;
  for (auto &[name, span] : ParamViews(const_cast<ToyModelParams &>(params))) {
    views.emplace_back(name, span);
  }
  return views;
}

ToyModelParams ZerosLike(const ToyModelParams &params) {
  ToyModelParams z = params;
  for (auto &[name, span] : ParamViews(z)) {
    for (double &v : span) v = 0.0;
  }
  return z;
}

ToyModelParams InitParams(std::uint64_t seed, const ToyDims &dims, int vocab,
                          int num_blanks) {
  CheckDims(dims, vocab, num_blanks);
  ToyModelParams p;
  p.dims = dims;
  p.vocab = vocab;
  p.num_blanks = num_blanks;
  const int K = vocab + num_blanks;
  p.enc_w1 = Matrix(dims.hidden, dims.feature);
  p.enc_b1.assign(dims.hidden, 0.0);
  p.enc_w2 = Matrix(dims.encoder_out, dims.hidden);
  p.enc_b2.assign(dims.encoder_out, 0.0);
  p.embeddings = Matrix(vocab + 1, dims.embed);
  p.joint_enc = Matrix(dims.joint, dims.encoder_out);
  p.joint_ctx = Matrix(dims.joint, 2 * dims.embed);
  p.joint_b.assign(dims.joint, 0.0);
  p.out_w = Matrix(K, dims.joint);
  p.out_b.assign(K, 0.0);

  Rng rng(seed);
  FillUniform(rng, p.enc_w1.data(), dims.feature);
  FillUniform(rng, p.enc_w2.data(), dims.hidden);
  FillUniform(rng, p.embeddings.data(), dims.embed);
  FillUniform(rng, p.joint_enc.data(), dims.encoder_out);
  FillUniform(rng, p.joint_ctx.data(), 2 * dims.embed);
  FillUniform(rng, p.out_w.data(), dims.joint);
  return p;
}

ActivationLattice ForwardActivations(const ToyModelParams &params,
                                     const Matrix &frames,
                                     std::span<const int> labels) {
  return RunForward(params, frames, labels, params.num_blanks, nullptr);
}

ToyGradResult ToyLossAndGrad(const ToyModelParams &params,
                             const Utterance &utterance,
                             const LossConfig &config) {
  if (config.blank_set.size() != params.num_blanks) {
    throw std::invalid_argument("toy model: blank set size mismatch");
  }
  const ToyDims &d = params.dims;
  const Matrix &frames = utterance.frames;
  std::span<const int> labels = utterance.labels;
  const int T = frames.rows();
  const int U = static_cast<int>(labels.size());
  const int K = params.width();

  ForwardCache cache;
  ActivationLattice acts = RunForward(params, frames, labels,
                                      params.num_blanks, &cache);
  LossResult loss = LossAndGrad(acts, labels, config);

  ToyGradResult result;
  result.loss = loss.loss;
  result.grad = ZerosLike(params);
  ToyModelParams &g = result.grad;

  // dz flows back through the joint. Per-frame and per-context partials
  // are accumulated first so the projection backprop runs once per t / u
  // instead of once per (t, u).
  Matrix d_joint_from_enc(T, d.joint);
  Matrix d_joint_from_ctx(U + 1, d.joint);
  std::vector<double> dq(d.joint);
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      auto dz = loss.grad.Slice(t, u);
      auto jh = cache.joint_hidden.Slice(t, u);
      OuterAcc(g.out_w, dz, jh);
      for (int k = 0; k < K; ++k) g.out_b[k] += dz[k];
      std::fill(dq.begin(), dq.end(), 0.0);
      MatTVecAcc(params.out_w, dz, dq);
      for (int i = 0; i < d.joint; ++i) {
        dq[i] *= 1.0 - jh[i] * jh[i];  // tanh'
        g.joint_b[i] += dq[i];
        d_joint_from_enc(t, i) += dq[i];
        d_joint_from_ctx(u, i) += dq[i];
      }
    }
  }

  // Encoder side: q += joint_enc * e_t, e_t = enc_w2 * h_t + b2,
  // h_t = tanh(enc_w1 * x_t + b1).
  std::vector<double> de(d.encoder_out), dh(d.hidden);
  for (int t = 0; t < T; ++t) {
    auto da = d_joint_from_enc.Row(t);
    OuterAcc(g.joint_enc, da, cache.enc_out.Row(t));
    std::fill(de.begin(), de.end(), 0.0);
    MatTVecAcc(params.joint_enc, da, de);
    auto h = cache.enc_hidden.Row(t);
    OuterAcc(g.enc_w2, de, h);
    for (int i = 0; i < d.encoder_out; ++i) g.enc_b2[i] += de[i];
    std::fill(dh.begin(), dh.end(), 0.0);
    MatTVecAcc(params.enc_w2, de, dh);
    for (int i = 0; i < d.hidden; ++i) dh[i] *= 1.0 - h[i] * h[i];
    OuterAcc(g.enc_w1, dh, frames.Row(t));
    for (int i = 0; i < d.hidden; ++i) g.enc_b1[i] += dh[i];
  }

  // Context side: q += joint_ctx * ctx_u; ctx_u is two embedding rows.
  std::vector<double> dctx(2 * d.embed);
  const int bos = params.vocab;
  for (int u = 0; u <= U; ++u) {
    auto dc = d_joint_from_ctx.Row(u);
    OuterAcc(g.joint_ctx, dc, cache.context.Row(u));
    std::fill(dctx.begin(), dctx.end(), 0.0);
    MatTVecAcc(params.joint_ctx, dc, dctx);
    auto older = g.embeddings.Row(ContextToken(labels, u, 2, bos));
    auto newer = g.embeddings.Row(ContextToken(labels, u, 1, bos));
    for (int i = 0; i < d.embed; ++i) older[i] += dctx[i];
    for (int i = 0; i < d.embed; ++i) newer[i] += dctx[d.embed + i];
  }
  return result;
}

TrainStepResult TrainStep(ToyModelParams &params, ToyModelParams &velocity,
                          std::span<const Utterance> batch,
                          const TrainConfig &config) {
  if (batch.empty()) {
    throw std::invalid_argument("TrainStep: empty batch");
  }
  if (!(config.learning_rate >= 0.0)) {
    throw std::invalid_argument("TrainStep: learning rate must be >= 0");
  }
  LossConfig loss_config{config.sigma, config.blank_set};

  ToyModelParams grad = ZerosLike(params);
  TrainStepResult result;
  double total_loss = 0.0;
  int counted = 0;
  for (const Utterance &utt : batch) {
    // With 1 in the blank set the only infeasible shape is labels with no
    // frames to carry them.
    if (utt.frames.rows() == 0 && !utt.labels.empty()) {
      ++result.skipped;
      continue;
    }
    ToyGradResult one = ToyLossAndGrad(params, utt, loss_config);
    total_loss += one.loss;
    auto gviews = ParamViews(grad);
    auto oviews = ParamViews(one.grad);
    for (std::size_t i = 0; i < gviews.size(); ++i) {
      auto dst = gviews[i].second;
      auto src = oviews[i].second;
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
    }
    ++counted;
  }
  if (counted == 0) return result;

  result.mean_loss = total_loss / counted;
  double inv = 1.0 / counted;
  auto pviews = ParamViews(params);
  auto vviews = ParamViews(velocity);
  auto gviews = ParamViews(grad);
  for (std::size_t i = 0; i < pviews.size(); ++i) {
    auto p = pviews[i].second;
    auto v = vviews[i].second;
    auto gspan = gviews[i].second;
    for (std::size_t k = 0; k < p.size(); ++k) {
      v[k] = config.momentum * v[k] + gspan[k] * inv;
      p[k] -= config.learning_rate * v[k];
    }
  }
  return result;
}

TrainRun Train(std::span<const Utterance> dataset, const TrainConfig &config,
               int vocab) {
  if (dataset.empty()) throw std::invalid_argument("Train: empty dataset");
  if (config.steps < 1 || config.batch_size < 1) {
    throw std::invalid_argument("Train: steps and batch_size must be >= 1");
  }
  TrainRun run;
  run.params = InitParams(config.seed, config.dims, vocab,
                          config.blank_set.size());
  ToyModelParams velocity = ZerosLike(run.params);

  // Separate stream from InitParams so dims changes do not reshuffle data.
  Rng order_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<int> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  std::vector<Utterance> batch;
  int step = 0;
  while (step < config.steps) {
    order_rng.Shuffle(order);
    for (std::size_t pos = 0; pos < order.size() && step < config.steps;
         pos += config.batch_size) {
      batch.clear();
      for (std::size_t i = pos;
           i < std::min(order.size(), pos + config.batch_size); ++i) {
        batch.push_back(dataset[order[i]]);
      }
      TrainStepResult sr = TrainStep(run.params, velocity, batch, config);
      run.loss_curve.push_back(sr.mean_loss);
      run.skipped += sr.skipped;
      ++step;
    }
  }
  return run;
}

Scorer MakeScorer(const ToyModelParams &params, const Matrix &frames) {
  const ToyDims d = params.dims;
  if (frames.cols() != d.feature) {
    throw std::invalid_argument("MakeScorer: frame width != feature dim");
  }
  // Precompute the per-frame encoder half once; only the context half
  // depends on the decoding history.
  auto joint_from_enc = std::make_shared<Matrix>(frames.rows(), d.joint);
  {
    std::vector<double> h(d.hidden), e(d.encoder_out);
    for (int t = 0; t < frames.rows(); ++t) {
      for (int i = 0; i < d.hidden; ++i) h[i] = params.enc_b1[i];
      MatVecAcc(params.enc_w1, frames.Row(t), h);
      for (double &v : h) v = std::tanh(v);
      for (int i = 0; i < d.encoder_out; ++i) e[i] = params.enc_b2[i];
      MatVecAcc(params.enc_w2, h, e);
      MatVecAcc(params.joint_enc, e, joint_from_enc->Row(t));
    }
  }
  ToyModelParams copy = params;
  return [copy = std::move(copy), joint_from_enc,
          d](int t, std::span<const int> history) {
    if (t < 0 || t >= joint_from_enc->rows()) {
      throw std::invalid_argument("scorer: frame index out of range");
    }
    const int bos = copy.vocab;
    int n = static_cast<int>(history.size());
    auto older = copy.embeddings.Row(n >= 2 ? history[n - 2] : bos);
    auto newer = copy.embeddings.Row(n >= 1 ? history[n - 1] : bos);
    std::vector<double> ctx(2 * d.embed);
    for (int i = 0; i < d.embed; ++i) ctx[i] = older[i];
    for (int i = 0; i < d.embed; ++i) ctx[d.embed + i] = newer[i];
    std::vector<double> q(d.joint);
    for (int i = 0; i < d.joint; ++i) {
      q[i] = (*joint_from_enc)(t, i) + copy.joint_b[i];
    }
    MatVecAcc(copy.joint_ctx, ctx, q);
    for (double &v : q) v = std::tanh(v);
    std::vector<double> z(copy.width());
    for (int k = 0; k < copy.width(); ++k) z[k] = copy.out_b[k];
    MatVecAcc(copy.out_w, q, z);
    return z;
  };
}

void SaveCheckpoint(const std::filesystem::path &path,
                    const Checkpoint &checkpoint) {
  if (checkpoint.blank_set.size() != checkpoint.params.num_blanks) {
    throw std::invalid_argument("SaveCheckpoint: blank set size mismatch");
  }
  nlohmann::ordered_json j;
  j["format"] = "multiblank-checkpoint-v1";
  j["dims"] = {{"feature", checkpoint.params.dims.feature},
               {"hidden", checkpoint.params.dims.hidden},
               {"encoder_out", checkpoint.params.dims.encoder_out},
               {"embed", checkpoint.params.dims.embed},
               {"joint", checkpoint.params.dims.joint}};
  j["vocab"] = checkpoint.params.vocab;
  j["blank_set"] = checkpoint.blank_set.durations();
  j["sigma"] = checkpoint.sigma;
  nlohmann::ordered_json weights;
  for (const auto &[name, span] : ParamViews(checkpoint.params)) {
    weights[name] = std::vector<double>(span.begin(), span.end());
  }
  j["weights"] = std::move(weights);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("SaveCheckpoint: cannot open " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw IoError("SaveCheckpoint: write failed for " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("LoadCheckpoint: cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception &e) {
    throw IoError("LoadCheckpoint: " + path.string() + ": " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "multiblank-checkpoint-v1") {
      throw std::invalid_argument("unsupported checkpoint format tag");
    }
    ToyDims dims;
    dims.feature = j.at("dims").at("feature").get<int>();
    dims.hidden = j.at("dims").at("hidden").get<int>();
    dims.encoder_out = j.at("dims").at("encoder_out").get<int>();
    dims.embed = j.at("dims").at("embed").get<int>();
    dims.joint = j.at("dims").at("joint").get<int>();
    int vocab = j.at("vocab").get<int>();
    BlankSet blank_set(j.at("blank_set").get<std::vector<int>>());

    Checkpoint ckpt{
        InitParams(0, dims, vocab, blank_set.size()),
        blank_set,
        j.at("sigma").get<double>(),
    };
    const auto &weights = j.at("weights");
    for (auto &[name, span] : ParamViews(ckpt.params)) {
      std::vector<double> values = weights.at(name).get<std::vector<double>>();
      if (values.size() != span.size()) {
        throw std::invalid_argument("checkpoint weight '" + name +
                                    "' has wrong size");
      }
      std::copy(values.begin(), values.end(), span.begin());
    }
    return ckpt;
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument("LoadCheckpoint: " + path.string() + ": " +
                                e.what());
  }
}

}  // namespace multiblank
