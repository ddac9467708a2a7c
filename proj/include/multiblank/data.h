// multiblank/data.h
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

#ifndef MULTIBLANK_DATA_H_
#define MULTIBLANK_DATA_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "multiblank/numerics.h"

namespace multiblank {

// File-level failures (missing file, malformed line). Carries the line
// number where applicable.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Utterance {
  Matrix frames;            // T x F
  std::vector<int> labels;  // U ids in [0, V)
};

// Synthetic corpus: each label is rendered as repeat_factor consecutive
// frames of its one-hot vector plus Gaussian noise, so T = U * repeat_factor
// and a per-frame argmax classifier recovers the labels when noise_std = 0.
// Consecutive labels always differ (uniform over the other vocab - 1 ids),
// so collapsing duplicate frame classifications recovers the sequence
// without knowing repeat_factor.
//
// repeat_jitter > 0 draws each span length uniformly from
// [repeat_factor - jitter, repeat_factor + jitter] instead, giving
// T in [U * (r - jitter), U * (r + jitter)]. Fixed-length spans present
// identical inputs to a per-frame encoder, which lets training collapse
// onto a single skip pattern; jitter keeps the alignment posterior spread
// the way variable-duration speech units do.
struct SynthConfig {
  int vocab = 8;           // V
  int feature = 8;         // F, must be >= vocab
  int repeat_factor = 6;
  int repeat_jitter = 0;   // must be < repeat_factor
  double noise_std = 0.1;
  int min_labels = 3;
  int max_labels = 8;
  int count = 100;
  std::uint64_t seed = 0;
};

std::vector<Utterance> SynthGenerate(const SynthConfig &config);

// JSON-lines persistence: one {"frames": [[..]], "labels": [..]} object
// per line, UTF-8, LF line endings. Values round-trip exactly.
void SaveDataset(const std::filesystem::path &path,
                 std::span<const Utterance> utterances);
std::vector<Utterance> LoadDataset(const std::filesystem::path &path);

}  // namespace multiblank

#endif  // MULTIBLANK_DATA_H_
