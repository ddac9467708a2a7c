// multiblank/decode.cc
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

#include "multiblank/decode.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

namespace multiblank {

namespace {

int Argmax(std::span<const double> v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

void Append(DecodeResult &result, bool is_blank, int value, int frame) {
  result.trace.push_back(
      EmissionEvent{is_blank, value, frame,
                    static_cast<int>(result.trace.size())});
  if (!is_blank) result.tokens.push_back(value);
}

}  // namespace

DecodeResult GreedyDecode(const Scorer &scorer, int T,
                          const BlankSet &blank_set,
                          int max_symbols_per_frame) {
  if (max_symbols_per_frame < 1) {
    throw std::invalid_argument("decode: max_symbols_per_frame must be >= 1");
  }
  // V is discovered from the first scorer call; only the total width is
  // needed to split labels from blanks.
  DecodeResult result;
  result.frames = T;

  auto start = std::chrono::steady_clock::now();
  int t = 0;
  int consecutive_labels = 0;
  int width = -1;
  while (t < T) {
    if (consecutive_labels == max_symbols_per_frame) {
      // Forced standard-blank advance; no scorer call.
      Append(result, true, 1, t);
      t += 1;
      consecutive_labels = 0;
      continue;
    }
    std::vector<double> acts = scorer(t, result.tokens);
    if (width < 0) {
      width = static_cast<int>(acts.size());
      if (width <= blank_set.size()) {
        throw std::invalid_argument("decode: scorer vector has wrong length");
      }
    } else if (static_cast<int>(acts.size()) != width) {
      throw std::invalid_argument("decode: scorer vector has wrong length");
    }
    int V = width - blank_set.size();
    int k = Argmax(acts);
    if (k < V) {
      Append(result, false, k, t);
      ++consecutive_labels;
    } else {
      int m = blank_set.duration(k - V);
      Append(result, true, m, t);
      t += m;
      consecutive_labels = 0;
    }
  }
  result.steps = static_cast<int>(result.trace.size());
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::vector<DecodeResult> BatchedGreedyDecode(std::span<const Scorer> scorers,
                                              std::span<const int> lengths,
                                              const BlankSet &blank_set,
                                              int max_symbols_per_frame) {
  if (scorers.empty()) {
    throw std::invalid_argument("decode: empty batch");
  }
  if (scorers.size() != lengths.size()) {
    throw std::invalid_argument("decode: scorer/length count mismatch");
  }
  if (max_symbols_per_frame < 1) {
    throw std::invalid_argument("decode: max_symbols_per_frame must be >= 1");
  }
  const int B = static_cast<int>(scorers.size());

  auto start = std::chrono::steady_clock::now();
  std::vector<DecodeResult> results(B);
  for (int i = 0; i < B; ++i) results[i].frames = lengths[i];

  int width = -1;
  int cursor = 0;
  while (true) {
    bool any_active = false;
    int round_min = std::numeric_limits<int>::max();
    for (int i = 0; i < B; ++i) {
      if (cursor >= lengths[i]) continue;  // exhausted, masked out
      any_active = true;
      // Emit labels until this input produces a blank prediction.
      int consecutive_labels = 0;
      int predicted = 0;
      while (true) {
        if (consecutive_labels == max_symbols_per_frame) {
          predicted = 1;  // forced standard blank
          break;
        }
        std::vector<double> acts = scorers[i](cursor, results[i].tokens);
        if (width < 0) {
          width = static_cast<int>(acts.size());
          if (width <= blank_set.size()) {
            throw std::invalid_argument(
                "decode: scorer vector has wrong length");
          }
        } else if (static_cast<int>(acts.size()) != width) {
          throw std::invalid_argument("decode: scorer vector has wrong length");
        }
        int V = width - blank_set.size();
        int k = Argmax(acts);
        if (k < V) {
          Append(results[i], false, k, cursor);
          ++consecutive_labels;
        } else {
          predicted = blank_set.duration(k - V);
          break;
        }
      }
      round_min = std::min(round_min, predicted);
    }
    if (!any_active) break;
    // Advance the shared cursor by the minimum predicted duration; longer
    // predictions are discarded and their traces record the minimum.
    for (int i = 0; i < B; ++i) {
      if (cursor >= lengths[i]) continue;
      Append(results[i], true, round_min, cursor);
    }
    cursor += round_min;
  }

  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  for (int i = 0; i < B; ++i) {
    results[i].steps = static_cast<int>(results[i].trace.size());
    results[i].seconds = seconds / B;  // apportioned evenly across the batch
  }
  return results;
}

std::int64_t EmissionHistogram::total() const {
  std::int64_t n = labels;
  for (const auto &[duration, count] : blanks) n += count;
  return n;
}

EmissionHistogram BuildEmissionHistogram(
    std::span<const DecodeResult> results) {
  EmissionHistogram hist;
  for (const DecodeResult &result : results) {
    for (const EmissionEvent &event : result.trace) {
      if (event.is_blank) {
        hist.blanks[event.value] += 1;
      } else {
        hist.labels += 1;
      }
    }
  }
  return hist;
}

SpeedupReport CompareDecodeRuns(std::span<const DecodeResult> baseline,
                                std::span<const DecodeResult> candidate) {
  if (baseline.size() != candidate.size() || baseline.empty()) {
    throw std::invalid_argument(
        "CompareDecodeRuns: runs must cover the same non-empty input set");
  }
  SpeedupReport report;
  for (const DecodeResult &r : baseline) {
    report.baseline_steps += r.steps;
    report.baseline_seconds += r.seconds;
  }
  for (const DecodeResult &r : candidate) {
    report.candidate_steps += r.steps;
    report.candidate_seconds += r.seconds;
  }
  double n = static_cast<double>(baseline.size());
  report.baseline_mean_steps = static_cast<double>(report.baseline_steps) / n;
  report.candidate_mean_steps = static_cast<double>(report.candidate_steps) / n;
  if (report.baseline_steps > 0) {
    report.step_reduction_pct =
        (1.0 - static_cast<double>(report.candidate_steps) /
                   static_cast<double>(report.baseline_steps)) *
        100.0;
  }
  if (report.candidate_steps > 0) {
    report.step_speedup_pct =
        (static_cast<double>(report.baseline_steps) /
             static_cast<double>(report.candidate_steps) -
         1.0) *
        100.0;
  }
  if (report.candidate_seconds > 0) {
    report.wall_clock_speedup_pct =
        (report.baseline_seconds / report.candidate_seconds - 1.0) * 100.0;
  }
  return report;
}

}  // namespace multiblank
