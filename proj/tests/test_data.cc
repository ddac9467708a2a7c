// tests/test_data.cc
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "multiblank/data.h"

using namespace multiblank;

namespace {

std::filesystem::path TempFile(const std::string &name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("SynthGenerate without noise renders exact one-hots") {
  SynthConfig cfg;
  cfg.vocab = 4;
  cfg.feature = 5;
  cfg.repeat_factor = 1;
  cfg.noise_std = 0.0;
  cfg.min_labels = 2;
  cfg.max_labels = 4;
  cfg.count = 20;
  cfg.seed = 3;
  auto corpus = SynthGenerate(cfg);
  REQUIRE(corpus.size() == 20);
  for (const Utterance &utt : corpus) {
    CHECK(utt.frames.rows() ==
          static_cast<int>(utt.labels.size()) * cfg.repeat_factor);
    for (int t = 0; t < utt.frames.rows(); ++t) {
      for (int f = 0; f < cfg.feature; ++f) {
        double expected = (f == utt.labels[t]) ? 1.0 : 0.0;
        CHECK(utt.frames(t, f) == expected);
      }
    }
  }
}

TEST_CASE("SynthGenerate per-frame argmax recovers labels at zero noise") {
  SynthConfig cfg;
  cfg.vocab = 6;
  cfg.feature = 8;
  cfg.repeat_factor = 4;
  cfg.noise_std = 0.0;
  cfg.count = 10;
  cfg.seed = 11;
  for (const Utterance &utt : SynthGenerate(cfg)) {
    for (int t = 0; t < utt.frames.rows(); ++t) {
      int best = 0;
      for (int f = 1; f < cfg.feature; ++f) {
        if (utt.frames(t, f) > utt.frames(t, best)) best = f;
      }
      CHECK(best == utt.labels[t / cfg.repeat_factor]);
    }
  }
}

TEST_CASE("SynthGenerate is deterministic and shape-correct") {
  SynthConfig cfg;
  cfg.count = 100;
  cfg.seed = 42;
  auto a = SynthGenerate(cfg);
  auto b = SynthGenerate(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].labels == b[i].labels);
    CHECK(a[i].frames.data() == b[i].frames.data());
    CHECK(a[i].frames.rows() ==
          static_cast<int>(a[i].labels.size()) * cfg.repeat_factor);
    CHECK(a[i].labels.size() >= static_cast<std::size_t>(cfg.min_labels));
    CHECK(a[i].labels.size() <= static_cast<std::size_t>(cfg.max_labels));
  }

  cfg.seed = 43;
  auto c = SynthGenerate(cfg);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].labels != c[i].labels || a[i].frames.data() != c[i].frames.data())
      any_difference = true;
  }
  CHECK(any_difference);
}

TEST_CASE("SynthGenerate never emits consecutive duplicate labels") {
  SynthConfig cfg;
  cfg.count = 60;
  cfg.seed = 5;
  for (const Utterance &utt : SynthGenerate(cfg)) {
    for (std::size_t i = 1; i < utt.labels.size(); ++i) {
      CHECK(utt.labels[i] != utt.labels[i - 1]);
    }
  }
}

TEST_CASE("SynthGenerate span jitter") {
  SynthConfig cfg;
  cfg.repeat_factor = 6;
  cfg.repeat_jitter = 2;
  cfg.count = 60;
  cfg.seed = 17;
  bool any_off_nominal = false;
  for (const Utterance &utt : SynthGenerate(cfg)) {
    int U = static_cast<int>(utt.labels.size());
    CHECK(utt.frames.rows() >= U * 4);
    CHECK(utt.frames.rows() <= U * 8);
    if (utt.frames.rows() != U * 6) any_off_nominal = true;
  }
  CHECK(any_off_nominal);

  auto again = SynthGenerate(cfg);
  auto first = SynthGenerate(cfg);
  REQUIRE(again.size() == first.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].frames.data() == first[i].frames.data());
  }

  cfg.repeat_jitter = 6;  // would allow zero-length spans
  CHECK_THROWS_AS(SynthGenerate(cfg), std::invalid_argument);
}

TEST_CASE("Dataset JSONL round trip") {
  SynthConfig cfg;
  cfg.count = 25;
  cfg.seed = 7;
  cfg.noise_std = 0.3;
  auto corpus = SynthGenerate(cfg);
  auto path = TempFile("multiblank_roundtrip.jsonl");
  SaveDataset(path, corpus);
  auto loaded = LoadDataset(path);
  REQUIRE(loaded.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(loaded[i].labels == corpus[i].labels);
    REQUIRE(loaded[i].frames.size() == corpus[i].frames.size());
    for (std::size_t k = 0; k < corpus[i].frames.size(); ++k) {
      CHECK(std::abs(loaded[i].frames.data()[k] -
                     corpus[i].frames.data()[k]) <= 1e-12);
    }
  }
  std::filesystem::remove(path);
}

TEST_CASE("Empty dataset round trip") {
  auto path = TempFile("multiblank_empty.jsonl");
  SaveDataset(path, {});
  CHECK(LoadDataset(path).empty());
  std::filesystem::remove(path);
}

TEST_CASE("LoadDataset names the malformed line") {
  auto path = TempFile("multiblank_truncated.jsonl");
  {
    std::ofstream out(path, std::ios::binary);
    out << R"({"frames": [[1.0]], "labels": [0]})" << "\n";
    out << R"({"frames": [[1.0]], "lab)";  // truncated
  }
  CHECK_THROWS_WITH_AS(LoadDataset(path), doctest::Contains("line 2"),
                       IoError);
  std::filesystem::remove(path);
}

TEST_CASE("LoadDataset rejects missing files") {
  CHECK_THROWS_AS(LoadDataset(TempFile("multiblank_does_not_exist.jsonl")),
                  IoError);
}

TEST_CASE("SynthGenerate validates its config") {
  SynthConfig bad;
  bad.feature = 2;  // < vocab
  CHECK_THROWS_AS(SynthGenerate(bad), std::invalid_argument);
  SynthConfig swapped;
  swapped.min_labels = 5;
  swapped.max_labels = 2;
  CHECK_THROWS_AS(SynthGenerate(swapped), std::invalid_argument);
}
