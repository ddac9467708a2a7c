// multiblank/data.cc
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

#include "multiblank/data.h"

#include <fstream>
#include <string>

#include "json.hpp"
#include "multiblank/rng.h"

namespace multiblank {

std::vector<Utterance> SynthGenerate(const SynthConfig &config) {
  if (config.vocab < 1 || config.feature < config.vocab ||
      config.repeat_factor < 1 || config.min_labels < 1 ||
      config.min_labels > config.max_labels || config.noise_std < 0.0 ||
      config.count < 0 || config.repeat_jitter < 0 ||
      config.repeat_jitter >= config.repeat_factor) {
    throw std::invalid_argument("SynthGenerate: invalid config");
  }
  Rng rng(config.seed);
  std::vector<Utterance> utterances;
  utterances.reserve(config.count);
  for (int i = 0; i < config.count; ++i) {
    int num_labels = rng.UniformInt(config.min_labels, config.max_labels);
    Utterance utt;
    utt.labels.resize(num_labels);
    // Uniform over ids differing from the previous label (plain uniform
    // when vocab = 1): the last-2-token decoder cannot see span
    // boundaries between identical neighbours, so consecutive duplicates
    // would be undecodable by construction.
    int prev = -1;
    for (int &id : utt.labels) {
      if (config.vocab == 1 || prev < 0) {
        id = rng.UniformInt(0, config.vocab - 1);
      } else {
        id = rng.UniformInt(0, config.vocab - 2);
        if (id >= prev) ++id;
      }
      prev = id;
    }
    std::vector<int> spans(num_labels, config.repeat_factor);
    if (config.repeat_jitter > 0) {
      for (int &span : spans) {
        span = rng.UniformInt(config.repeat_factor - config.repeat_jitter,
                              config.repeat_factor + config.repeat_jitter);
      }
    }
    int total_frames = 0;
    for (int span : spans) total_frames += span;
    utt.frames = Matrix(total_frames, config.feature);
    int t = 0;
    for (int k = 0; k < num_labels; ++k) {
      int id = utt.labels[k];
      for (int r = 0; r < spans[k]; ++r, ++t) {
        for (int f = 0; f < config.feature; ++f) {
          double base = (f == id) ? 1.0 : 0.0;
          utt.frames(t, f) =
              base + (config.noise_std > 0.0
                          ? rng.Gaussian(0.0, config.noise_std)
                          : 0.0);
        }
      }
    }
    utterances.push_back(std::move(utt));
  }
  return utterances;
}

void SaveDataset(const std::filesystem::path &path,
                 std::span<const Utterance> utterances) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("SaveDataset: cannot open " + path.string());
  }
  for (const Utterance &utt : utterances) {
    nlohmann::json frames = nlohmann::json::array();
    for (int t = 0; t < utt.frames.rows(); ++t) {
      nlohmann::json row = nlohmann::json::array();
      for (int f = 0; f < utt.frames.cols(); ++f) {
        row.push_back(utt.frames(t, f));
      }
      frames.push_back(std::move(row));
    }
    nlohmann::json line;
    line["frames"] = std::move(frames);
    line["labels"] = utt.labels;
    out << line.dump() << "\n";
  }
  if (!out) {
    throw IoError("SaveDataset: write failed for " + path.string());
  }
}

std::vector<Utterance> LoadDataset(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("LoadDataset: cannot open " + path.string());
  }
  std::vector<Utterance> utterances;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(line);
      const auto &frames = parsed.at("frames");
      const auto &labels = parsed.at("labels");
      Utterance utt;
      utt.labels = labels.get<std::vector<int>>();
      int T = static_cast<int>(frames.size());
      int F = T > 0 ? static_cast<int>(frames.at(0).size()) : 0;
      utt.frames = Matrix(T, F);
      for (int t = 0; t < T; ++t) {
        const auto &row = frames.at(t);
        if (static_cast<int>(row.size()) != F) {
          throw IoError("ragged frame row");
        }
        for (int f = 0; f < F; ++f) {
          utt.frames(t, f) = row.at(f).get<double>();
        }
      }
      utterances.push_back(std::move(utt));
    } catch (const IoError &) {
      throw IoError("LoadDataset: " + path.string() + " line " +
                    std::to_string(line_number) + ": ragged frame row");
    } catch (const std::exception &e) {
      throw IoError("LoadDataset: " + path.string() + " line " +
                    std::to_string(line_number) + ": " + e.what());
    }
  }
  return utterances;
}

}  // namespace multiblank
