// tools/multiblank_main.cc
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
//
// Command surface:
//   multiblank verify     DP loss vs brute-force oracle + gradient checks
//   multiblank train      train the toy transducer on a dataset
//   multiblank decode     greedy / batched-greedy decoding + token errors
//   multiblank bench      step and wall-clock comparison of two checkpoints
//   multiblank emissions  per-kind emission counts
//
// Exit codes: 0 success, 1 tolerance failure, 2 usage/configuration error,
// 3 I/O error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "multiblank/data.h"
#include "multiblank/decode.h"
#include "multiblank/metrics.h"
#include "multiblank/report.h"
#include "multiblank/toymodel.h"
#include "multiblank/verify.h"

namespace multiblank {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CommonOpts {
  std::uint64_t seed = 0;
  double sigma = 0.05;
  std::string blanks = "1";
  int batch_size = 1;
  int max_symbols = 10;
  std::string out_dir = "out";
};

struct VerifyOpts {
  int trials = 1000;
  int grad_trials = 100;
  int max_t = 5;
  int max_u = 3;
  int max_v = 5;
  double corrupt = 0.0;  // test fixture, see VerifyOptions
};

struct SynthOpts {
  int count = 2000;
  int heldout = 200;
  int vocab = 8;
  int feature = 8;
  int repeat = 6;
  int jitter = 0;
  double noise_std = 0.1;
  int min_labels = 3;
  int max_labels = 8;
};

struct TrainOpts {
  std::string data;     // empty -> synthesize
  std::string heldout;  // empty -> synthesize or skip
  std::string checkpoint_out;
  SynthOpts synth;
  int steps = 1200;
  double learning_rate = 0.01;
  double momentum = 0.9;
  int vocab = 0;  // 0 -> from synth config or inferred from data
  ToyDims dims;
};

struct DecodeOpts {
  std::string checkpoint;
  std::string data;
};

struct BenchOpts {
  std::string baseline;
  std::string candidate;
  std::string data;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       since)
      .count();
}

// --config values fill any option the command line left untouched;
// precedence is flags > file > defaults.
void ApplyConfigFile(CLI::App &app, const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path);
  nlohmann::json config;
  try {
    in >> config;
  } catch (const std::exception &e) {
    throw IoError("config file " + path + ": " + e.what());
  }
  if (!config.is_object()) {
    throw std::invalid_argument("config file must hold a JSON object");
  }
  for (const auto &[key, value] : config.items()) {
    CLI::Option *opt = nullptr;
    for (CLI::App *scope : {&app, app.get_parent()}) {
      if (!scope) continue;
      try {
        opt = scope->get_option("--" + key);
        break;
      } catch (const CLI::OptionNotFound &) {
      }
    }
    if (!opt) {
      throw std::invalid_argument("config key '" + key +
                                  "' matches no option of this command");
    }
    if (opt->count() > 0) continue;  // explicit flag wins
    std::string text =
        value.is_string() ? value.get<std::string>() : value.dump();
    opt->add_result(text);
    opt->run_callback();
  }
}

int InferVocab(std::span<const Utterance> data) {
  int max_id = -1;
  for (const Utterance &utt : data) {
    for (int id : utt.labels) max_id = std::max(max_id, id);
  }
  if (max_id < 0) {
    throw std::invalid_argument("cannot infer vocabulary from empty labels");
  }
  return max_id + 1;
}

std::filesystem::path PrepareOutDir(const CommonOpts &common) {
  std::filesystem::path dir(common.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  return dir;
}

nlohmann::ordered_json CommonConfigJson(const CommonOpts &common,
                                        const BlankSet &blank_set) {
  nlohmann::ordered_json j;
  j["seed"] = common.seed;
  j["sigma"] = common.sigma;
  j["blank_set"] = blank_set.durations();
  j["batch_size"] = common.batch_size;
  j["max_symbols"] = common.max_symbols;
  return j;
}

nlohmann::ordered_json HistogramJson(const EmissionHistogram &hist) {
  nlohmann::ordered_json j;
  j["label"] = hist.labels;
  for (const auto &[duration, count] : hist.blanks) {
    j["blank_" + std::to_string(duration)] = count;
  }
  return j;
}

// Decodes a dataset with one checkpoint; batch_size 1 is exact greedy,
// larger sizes use the shared-cursor batched decoder on consecutive
// groups in dataset order.
std::vector<DecodeResult> DecodeDataset(const Checkpoint &ckpt,
                                        std::span<const Utterance> data,
                                        int batch_size, int max_symbols) {
  if (batch_size < 1) {
    throw std::invalid_argument("batch size must be >= 1");
  }
  for (const Utterance &utt : data) {
    for (int id : utt.labels) {
      if (id >= ckpt.params.vocab) {
        throw std::invalid_argument(
            "dataset label id exceeds checkpoint vocabulary");
      }
    }
  }
  std::vector<DecodeResult> results;
  results.reserve(data.size());
  if (batch_size == 1) {
    for (const Utterance &utt : data) {
      results.push_back(GreedyDecode(MakeScorer(ckpt.params, utt.frames),
                                     utt.frames.rows(), ckpt.blank_set,
                                     max_symbols));
    }
    return results;
  }
  for (std::size_t pos = 0; pos < data.size();
       pos += static_cast<std::size_t>(batch_size)) {
    std::size_t end = std::min(data.size(), pos + batch_size);
    std::vector<Scorer> scorers;
    std::vector<int> lengths;
    for (std::size_t i = pos; i < end; ++i) {
      scorers.push_back(MakeScorer(ckpt.params, data[i].frames));
      lengths.push_back(data[i].frames.rows());
    }
    auto group = BatchedGreedyDecode(scorers, lengths, ckpt.blank_set,
                                     max_symbols);
    for (auto &r : group) results.push_back(std::move(r));
  }
  return results;
}

double DatasetTokenErrorRate(std::span<const Utterance> data,
                             std::span<const DecodeResult> results) {
  std::vector<std::vector<int>> refs, hyps;
  for (const Utterance &utt : data) refs.push_back(utt.labels);
  for (const DecodeResult &r : results) hyps.push_back(r.tokens);
  return TokenErrorRate(refs, hyps);
}

int RunVerify(const CommonOpts &common, const VerifyOpts &opts) {
  VerifyOptions vo;
  vo.trials = opts.trials;
  vo.grad_trials = std::min(opts.grad_trials, opts.trials);
  vo.max_T = opts.max_t;
  vo.max_U = opts.max_u;
  vo.max_V = opts.max_v;
  vo.seed = common.seed;
  vo.corrupt_loss_by = opts.corrupt;

  auto started = std::chrono::steady_clock::now();
  VerifyOutcome outcome = RunVerification(vo);

  RunReport report;
  report.command = "verify";
  report.config["seed"] = common.seed;
  report.config["sigmas"] = vo.sigmas;
  report.config["trials"] = vo.trials;
  report.config["grad_trials"] = vo.grad_trials;
  report.config["max_T"] = vo.max_T;
  report.config["max_U"] = vo.max_U;
  report.config["max_V"] = vo.max_V;
  report.config["loss_tolerance"] = vo.loss_tolerance;
  report.config["grad_tolerance"] = vo.grad_tolerance;
  report.metrics["loss_trials"] = outcome.loss_trials;
  report.metrics["grad_trials"] = outcome.grad_trials;
  report.metrics["max_loss_deviation"] = outcome.max_loss_deviation;
  report.metrics["max_forward_backward_gap"] =
      outcome.max_forward_backward_gap;
  report.metrics["max_grad_rel_error"] = outcome.max_grad_rel_error;
  report.metrics["ok"] = outcome.ok;
  report.timing["timestamp"] = CurrentTimestamp();
  report.timing["wall_clock_seconds"] = Seconds(started);

  auto dir = PrepareOutDir(common);
  report.artifacts.push_back((dir / "report.json").string());
  WriteReportJson(dir / "report.json", report);

  std::cout << (outcome.ok ? "verify: OK" : "verify: TOLERANCE BREACH")
            << "  max |dp - oracle| = " << outcome.max_loss_deviation
            << "  max |fwd - bwd| = " << outcome.max_forward_backward_gap
            << "  max grad rel err = " << outcome.max_grad_rel_error
            << std::endl;
  return outcome.ok ? kExitOk : kExitTolerance;
}

int RunTrain(const CommonOpts &common, const TrainOpts &opts) {
  BlankSet blank_set = BlankSet::Parse(common.blanks);
  auto started = std::chrono::steady_clock::now();

  std::vector<Utterance> train_data, heldout_data;
  int vocab = opts.vocab;
  bool synthesized = false;
  if (opts.data.empty()) {
    SynthConfig sc;
    sc.vocab = opts.synth.vocab;
    sc.feature = opts.synth.feature;
    sc.repeat_factor = opts.synth.repeat;
    sc.repeat_jitter = opts.synth.jitter;
    sc.noise_std = opts.synth.noise_std;
    sc.min_labels = opts.synth.min_labels;
    sc.max_labels = opts.synth.max_labels;
    sc.count = opts.synth.count;
    sc.seed = common.seed;
    train_data = SynthGenerate(sc);
    sc.count = opts.synth.heldout;
    sc.seed = common.seed + 1;  // disjoint stream for the held-out set
    heldout_data = SynthGenerate(sc);
    if (vocab == 0) vocab = sc.vocab;
    synthesized = true;
  } else {
    train_data = LoadDataset(opts.data);
    if (!opts.heldout.empty()) heldout_data = LoadDataset(opts.heldout);
    if (vocab == 0) vocab = InferVocab(train_data);
  }
  if (train_data.empty()) {
    throw std::invalid_argument("training dataset is empty");
  }

  TrainConfig tc;
  tc.sigma = common.sigma;
  tc.blank_set = blank_set;
  tc.learning_rate = opts.learning_rate;
  tc.momentum = opts.momentum;
  tc.batch_size = common.batch_size;
  tc.steps = opts.steps;
  tc.seed = common.seed;
  tc.dims = opts.dims;
  tc.dims.feature = train_data.front().frames.cols();

  TrainRun run = Train(train_data, tc, vocab);

  auto dir = PrepareOutDir(common);
  if (synthesized) {
    // Persist the corpus so decode/bench/emissions can reuse it.
    SaveDataset(dir / "train.jsonl", train_data);
    SaveDataset(dir / "heldout.jsonl", heldout_data);
  }
  std::filesystem::path ckpt_path =
      opts.checkpoint_out.empty() ? dir / "checkpoint.json"
                                  : std::filesystem::path(opts.checkpoint_out);
  SaveCheckpoint(ckpt_path, Checkpoint{run.params, blank_set, common.sigma});

  double heldout_ter = 0.0;
  std::int64_t heldout_steps = 0;
  if (!heldout_data.empty()) {
    Checkpoint ckpt{run.params, blank_set, common.sigma};
    auto results = DecodeDataset(ckpt, heldout_data, 1, common.max_symbols);
    heldout_ter = DatasetTokenErrorRate(heldout_data, results);
    for (const auto &r : results) heldout_steps += r.steps;
  }

  RunReport report;
  report.command = "train";
  report.config = CommonConfigJson(common, blank_set);
  report.config["steps"] = tc.steps;
  report.config["learning_rate"] = tc.learning_rate;
  report.config["momentum"] = tc.momentum;
  report.config["vocab"] = vocab;
  report.config["dims"] = {{"feature", tc.dims.feature},
                           {"hidden", tc.dims.hidden},
                           {"encoder_out", tc.dims.encoder_out},
                           {"embed", tc.dims.embed},
                           {"joint", tc.dims.joint}};
  report.config["train_utterances"] = train_data.size();
  report.config["heldout_utterances"] = heldout_data.size();
  report.config["data"] = opts.data.empty() ? "synthetic" : opts.data;
  report.metrics["final_loss"] = run.loss_curve.back();
  report.metrics["first_loss"] = run.loss_curve.front();
  report.metrics["loss_curve"] = run.loss_curve;
  report.metrics["skipped_utterances"] = run.skipped;
  report.metrics["heldout_token_error_rate"] = heldout_ter;
  report.metrics["heldout_steps"] = heldout_steps;
  report.timing["timestamp"] = CurrentTimestamp();
  report.timing["wall_clock_seconds"] = Seconds(started);
  report.artifacts.push_back(ckpt_path.string());
  if (synthesized) {
    report.artifacts.push_back((dir / "train.jsonl").string());
    report.artifacts.push_back((dir / "heldout.jsonl").string());
  }
  report.artifacts.push_back((dir / "report.json").string());
  WriteReportJson(dir / "report.json", report);

  std::cout << "train: " << tc.steps << " steps, final loss "
            << run.loss_curve.back() << ", held-out token error rate "
            << heldout_ter << std::endl;
  return kExitOk;
}

int RunDecode(const CommonOpts &common, const DecodeOpts &opts) {
  auto started = std::chrono::steady_clock::now();
  Checkpoint ckpt = LoadCheckpoint(opts.checkpoint);
  std::vector<Utterance> data = LoadDataset(opts.data);
  if (data.empty()) throw std::invalid_argument("dataset is empty");

  auto results =
      DecodeDataset(ckpt, data, common.batch_size, common.max_symbols);
  double ter = DatasetTokenErrorRate(data, results);
  std::int64_t steps = 0;
  double decode_seconds = 0.0;
  for (const auto &r : results) {
    steps += r.steps;
    decode_seconds += r.seconds;
  }
  EmissionHistogram hist = BuildEmissionHistogram(results);

  auto dir = PrepareOutDir(common);
  CsvWriter csv({"utterance", "frames", "steps", "ref_tokens", "hyp_tokens",
                 "edit_distance"});
  for (std::size_t i = 0; i < results.size(); ++i) {
    csv.AddRow(
        {CsvWriter::Format(static_cast<std::int64_t>(i)),
         CsvWriter::Format(static_cast<std::int64_t>(results[i].frames)),
         CsvWriter::Format(static_cast<std::int64_t>(results[i].steps)),
         CsvWriter::Format(static_cast<std::int64_t>(data[i].labels.size())),
         CsvWriter::Format(static_cast<std::int64_t>(results[i].tokens.size())),
         CsvWriter::Format(static_cast<std::int64_t>(
             EditDistance(data[i].labels, results[i].tokens)))});
  }
  csv.Write(dir / "decode.csv");

  RunReport report;
  report.command = "decode";
  report.config = CommonConfigJson(common, ckpt.blank_set);
  report.config["sigma"] = ckpt.sigma;  // provenance from the checkpoint
  report.config["checkpoint"] = opts.checkpoint;
  report.config["data"] = opts.data;
  report.config["utterances"] = data.size();
  report.metrics["token_error_rate"] = ter;
  report.metrics["total_steps"] = steps;
  report.metrics["mean_steps"] =
      static_cast<double>(steps) / static_cast<double>(results.size());
  report.metrics["emission_histogram"] = HistogramJson(hist);
  report.timing["timestamp"] = CurrentTimestamp();
  report.timing["decode_seconds"] = decode_seconds;
  report.timing["wall_clock_seconds"] = Seconds(started);
  report.artifacts.push_back((dir / "decode.csv").string());
  report.artifacts.push_back((dir / "report.json").string());
  WriteReportJson(dir / "report.json", report);

  std::cout << "decode: " << results.size() << " utterances, batch "
            << common.batch_size << ", token error rate " << ter << ", "
            << steps << " steps" << std::endl;
  return kExitOk;
}

int RunBench(const CommonOpts &common, const BenchOpts &opts) {
  auto started = std::chrono::steady_clock::now();
  Checkpoint baseline = LoadCheckpoint(opts.baseline);
  Checkpoint candidate = LoadCheckpoint(opts.candidate);
  if (baseline.params.vocab != candidate.params.vocab) {
    throw std::invalid_argument(
        "bench: checkpoints have different vocabularies");
  }
  std::vector<Utterance> data = LoadDataset(opts.data);
  if (data.empty()) throw std::invalid_argument("dataset is empty");

  auto base_results =
      DecodeDataset(baseline, data, common.batch_size, common.max_symbols);
  auto cand_results =
      DecodeDataset(candidate, data, common.batch_size, common.max_symbols);
  SpeedupReport sp = CompareDecodeRuns(base_results, cand_results);
  double base_ter = DatasetTokenErrorRate(data, base_results);
  double cand_ter = DatasetTokenErrorRate(data, cand_results);

  auto dir = PrepareOutDir(common);
  CsvWriter csv({"metric", "baseline", "candidate"});
  csv.AddRow({"total_steps", CsvWriter::Format(sp.baseline_steps),
              CsvWriter::Format(sp.candidate_steps)});
  csv.AddRow({"mean_steps", CsvWriter::Format(sp.baseline_mean_steps),
              CsvWriter::Format(sp.candidate_mean_steps)});
  csv.AddRow({"token_error_rate", CsvWriter::Format(base_ter),
              CsvWriter::Format(cand_ter)});
  csv.AddRow(
      {"step_reduction_pct", "-", CsvWriter::Format(sp.step_reduction_pct)});
  csv.AddRow(
      {"step_speedup_pct", "-", CsvWriter::Format(sp.step_speedup_pct)});
  csv.Write(dir / "bench.csv");

  RunReport report;
  report.command = "bench";
  report.config["seed"] = common.seed;
  report.config["batch_size"] = common.batch_size;
  report.config["max_symbols"] = common.max_symbols;
  report.config["baseline"] = opts.baseline;
  report.config["candidate"] = opts.candidate;
  report.config["baseline_blank_set"] = baseline.blank_set.durations();
  report.config["candidate_blank_set"] = candidate.blank_set.durations();
  report.config["baseline_sigma"] = baseline.sigma;
  report.config["candidate_sigma"] = candidate.sigma;
  report.config["data"] = opts.data;
  report.metrics["baseline_total_steps"] = sp.baseline_steps;
  report.metrics["candidate_total_steps"] = sp.candidate_steps;
  report.metrics["baseline_mean_steps"] = sp.baseline_mean_steps;
  report.metrics["candidate_mean_steps"] = sp.candidate_mean_steps;
  report.metrics["step_reduction_pct"] = sp.step_reduction_pct;
  report.metrics["step_speedup_pct"] = sp.step_speedup_pct;
  report.metrics["baseline_token_error_rate"] = base_ter;
  report.metrics["candidate_token_error_rate"] = cand_ter;
  report.timing["timestamp"] = CurrentTimestamp();
  report.timing["baseline_seconds"] = sp.baseline_seconds;
  report.timing["candidate_seconds"] = sp.candidate_seconds;
  report.timing["wall_clock_speedup_pct"] = sp.wall_clock_speedup_pct;
  report.timing["wall_clock_seconds"] = Seconds(started);
  report.artifacts.push_back((dir / "bench.csv").string());
  report.artifacts.push_back((dir / "report.json").string());
  WriteReportJson(dir / "report.json", report);

  std::cout << "bench: steps " << sp.baseline_steps << " -> "
            << sp.candidate_steps << " (speedup " << sp.step_speedup_pct
            << "%)" << std::endl;
  return kExitOk;
}

int RunEmissions(const CommonOpts &common, const DecodeOpts &opts) {
  auto started = std::chrono::steady_clock::now();
  Checkpoint ckpt = LoadCheckpoint(opts.checkpoint);
  std::vector<Utterance> data = LoadDataset(opts.data);
  if (data.empty()) throw std::invalid_argument("dataset is empty");

  auto results =
      DecodeDataset(ckpt, data, common.batch_size, common.max_symbols);
  EmissionHistogram hist = BuildEmissionHistogram(results);
  std::int64_t steps = 0;
  for (const auto &r : results) steps += r.steps;

  auto dir = PrepareOutDir(common);
  CsvWriter csv({"kind", "count"});
  csv.AddRow({"label", CsvWriter::Format(hist.labels)});
  for (const auto &[duration, count] : hist.blanks) {
    csv.AddRow({"blank_" + std::to_string(duration), CsvWriter::Format(count)});
  }
  csv.Write(dir / "emissions.csv");

  RunReport report;
  report.command = "emissions";
  report.config = CommonConfigJson(common, ckpt.blank_set);
  report.config["sigma"] = ckpt.sigma;
  report.config["checkpoint"] = opts.checkpoint;
  report.config["data"] = opts.data;
  report.metrics["emission_histogram"] = HistogramJson(hist);
  report.metrics["total_steps"] = steps;
  report.metrics["total_emissions"] = hist.total();
  report.timing["timestamp"] = CurrentTimestamp();
  report.timing["wall_clock_seconds"] = Seconds(started);
  report.artifacts.push_back((dir / "emissions.csv").string());
  report.artifacts.push_back((dir / "report.json").string());
  WriteReportJson(dir / "report.json", report);

  std::cout << "emissions: " << hist.total() << " events over "
            << results.size() << " utterances" << std::endl;
  return kExitOk;
}

int Main(int argc, char **argv) {
  CLI::App app{"multi-blank transducer toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand

  CommonOpts common;
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON file with option overrides (flags win)");
  app.add_option("--seed", common.seed, "RNG seed");
  app.add_option("--sigma", common.sigma,
                 "logit under-normalization strength");
  app.add_option("--blanks", common.blanks,
                 "comma-separated blank durations, must include 1");
  app.add_option("--batch-size", common.batch_size,
                 "decode batch size / training minibatch size");
  app.add_option("--max-symbols", common.max_symbols,
                 "max consecutive labels per frame before a forced blank");
  app.add_option("--out", common.out_dir, "output directory");

  VerifyOpts verify_opts;
  CLI::App *verify = app.add_subcommand(
      "verify", "compare the DP loss against the brute-force oracle");
  verify->add_option("--trials", verify_opts.trials, "loss comparisons");
  verify->add_option("--grad-trials", verify_opts.grad_trials,
                     "finite-difference gradient comparisons");
  verify->add_option("--max-t", verify_opts.max_t, "max frame count");
  verify->add_option("--max-u", verify_opts.max_u, "max label count");
  verify->add_option("--max-v", verify_opts.max_v, "max vocabulary");
  verify
      ->add_option("--corrupt", verify_opts.corrupt,
                   "perturb the DP loss (negative-control fixture)")
      ->group("");  // hidden

  TrainOpts train_opts;
  CLI::App *train = app.add_subcommand("train", "train the toy transducer");
  train->add_option("--data", train_opts.data,
                    "JSONL training set (omit to synthesize)");
  train->add_option("--heldout", train_opts.heldout, "JSONL held-out set");
  train->add_option("--checkpoint-out", train_opts.checkpoint_out,
                    "checkpoint path (default <out>/checkpoint.json)");
  train->add_option("--steps", train_opts.steps, "training batches");
  train->add_option("--lr", train_opts.learning_rate, "learning rate");
  train->add_option("--momentum", train_opts.momentum, "SGD momentum");
  train->add_option("--vocab", train_opts.vocab,
                    "vocabulary size (default: inferred)");
  train->add_option("--synth-count", train_opts.synth.count,
                    "synthetic training utterances");
  train->add_option("--synth-heldout", train_opts.synth.heldout,
                    "synthetic held-out utterances");
  train->add_option("--synth-vocab", train_opts.synth.vocab,
                    "synthetic vocabulary");
  train->add_option("--synth-feature", train_opts.synth.feature,
                    "synthetic feature width");
  train->add_option("--synth-repeat", train_opts.synth.repeat,
                    "frames per label");
  train->add_option("--synth-jitter", train_opts.synth.jitter,
                    "span-length jitter (0 = fixed spans)");
  train->add_option("--synth-noise", train_opts.synth.noise_std,
                    "frame noise stddev");
  train->add_option("--synth-min-labels", train_opts.synth.min_labels,
                    "min labels per utterance");
  train->add_option("--synth-max-labels", train_opts.synth.max_labels,
                    "max labels per utterance");
  train->add_option("--dim-hidden", train_opts.dims.hidden,
                    "encoder hidden width");
  train->add_option("--dim-encoder", train_opts.dims.encoder_out,
                    "encoder output width");
  train->add_option("--dim-embed", train_opts.dims.embed, "embedding width");
  train->add_option("--dim-joint", train_opts.dims.joint, "joint width");

  DecodeOpts decode_opts;
  CLI::App *decode = app.add_subcommand("decode", "greedy decoding");
  decode->add_option("--checkpoint", decode_opts.checkpoint, "model")
      ->required();
  decode->add_option("--data", decode_opts.data, "JSONL dataset")->required();

  BenchOpts bench_opts;
  CLI::App *bench =
      app.add_subcommand("bench", "compare two checkpoints on one dataset");
  bench->add_option("--baseline", bench_opts.baseline, "baseline checkpoint")
      ->required();
  bench->add_option("--candidate", bench_opts.candidate,
                    "candidate checkpoint")
      ->required();
  bench->add_option("--data", bench_opts.data, "JSONL dataset")->required();

  DecodeOpts emissions_opts;
  CLI::App *emissions =
      app.add_subcommand("emissions", "emission-kind histogram");
  emissions->add_option("--checkpoint", emissions_opts.checkpoint, "model")
      ->required();
  emissions->add_option("--data", emissions_opts.data, "JSONL dataset")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      ApplyConfigFile(*app.get_subcommands().front(), config_path);
    }
    if (verify->parsed()) return RunVerify(common, verify_opts);
    if (train->parsed()) return RunTrain(common, train_opts);
    if (decode->parsed()) return RunDecode(common, decode_opts);
    if (bench->parsed()) return RunBench(common, bench_opts);
    if (emissions->parsed()) return RunEmissions(common, emissions_opts);
    return kExitUsage;
  } catch (const IoError &e) {
    std::cerr << "I/O error: " << e.what() << std::endl;
    return kExitIo;
  } catch (const std::invalid_argument &e) {
    std::cerr << "usage error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitTolerance;
  }
}

}  // namespace
}  // namespace multiblank

int main(int argc, char **argv) { return multiblank::Main(argc, argv); }
