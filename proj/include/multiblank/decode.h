// multiblank/decode.h
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

#ifndef MULTIBLANK_DECODE_H_
#define MULTIBLANK_DECODE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "multiblank/loss.h"

namespace multiblank {

// Greedy frame-skipping decoding. Emitting a blank of duration m advances
// the frame cursor by exactly m; decoding terminates at the first cursor
// position >= T, so the cursor may overshoot the final frame by up to
// max(N) - 1.

// Yields the (V + |N|)-vector of raw activations for frame `t` given the
// tokens emitted so far. Must be deterministic.
using Scorer =
    std::function<std::vector<double>(int t, std::span<const int> history)>;

struct EmissionEvent {
  bool is_blank = false;
  int value = 0;  // label id, or blank duration
  int frame = 0;  // cursor position at emission time
  int step = 0;   // ordinal within the trace

  bool operator==(const EmissionEvent &other) const = default;
};

struct DecodeResult {
  std::vector<int> tokens;           // blanks stripped
  std::vector<EmissionEvent> trace;  // every emission, in order
  int steps = 0;                     // == trace.size()
  int frames = 0;                    // input length T
  double seconds = 0.0;              // wall-clock spent decoding this input
};

// Greedy decoding loop: argmax the scorer output; a label is appended and
// the cursor stays put, a blank of duration m advances the cursor by m.
// After max_symbols_per_frame consecutive labels at one cursor position a
// standard blank is forced (recorded in the trace, no scorer call).
// Throws std::invalid_argument if the scorer vector has the wrong length.
DecodeResult GreedyDecode(const Scorer &scorer, int T,
                          const BlankSet &blank_set,
                          int max_symbols_per_frame = 10);

// Inexact batched greedy decoding. All inputs share one frame cursor; in
// each synchronization round every active input emits labels until it
// produces some blank, then the cursor advances by the minimum predicted
// duration among active inputs. Inputs that predicted a longer blank have
// that prediction discarded: their trace records the round minimum and
// they re-score at the new cursor. Inputs whose length is exhausted are
// masked out. With batch size 1 the result is bit-identical to
// GreedyDecode.
std::vector<DecodeResult> BatchedGreedyDecode(std::span<const Scorer> scorers,
                                              std::span<const int> lengths,
                                              const BlankSet &blank_set,
                                              int max_symbols_per_frame = 10);

// Emission counts over a decoded set: labels aggregate into one bucket,
// each blank duration gets its own.
struct EmissionHistogram {
  std::int64_t labels = 0;
  std::map<int, std::int64_t> blanks;  // duration -> count

  std::int64_t total() const;
};

EmissionHistogram BuildEmissionHistogram(std::span<const DecodeResult> results);

// Step-count and wall-clock comparison between two decode runs over the
// same inputs in the same order.
struct SpeedupReport {
  std::int64_t baseline_steps = 0;
  std::int64_t candidate_steps = 0;
  double baseline_mean_steps = 0.0;
  double candidate_mean_steps = 0.0;
  double step_reduction_pct = 0.0;  // (1 - candidate/baseline) * 100
  double step_speedup_pct = 0.0;    // (baseline/candidate - 1) * 100
  double baseline_seconds = 0.0;
  double candidate_seconds = 0.0;
  double wall_clock_speedup_pct = 0.0;
};

SpeedupReport CompareDecodeRuns(std::span<const DecodeResult> baseline,
                                std::span<const DecodeResult> candidate);

}  // namespace multiblank

#endif  // MULTIBLANK_DECODE_H_
