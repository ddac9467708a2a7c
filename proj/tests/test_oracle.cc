// tests/test_oracle.cc
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
#include <set>

#include "doctest.h"
#include "multiblank/oracle.h"
#include "multiblank/rng.h"
#include "multiblank/verify.h"
#include "test_util.h"

using namespace multiblank;
using test::CompositionCount;
using test::UniformActivations;

namespace {

// Walks a path through a (T, U) lattice and checks the Path invariants:
// labels in order, blank durations summing to T, frames strictly below T.
void CheckPathValid(const Path &path, int T, int U, const BlankSet &blanks) {
  int t = 0, u = 0;
  for (const PathStep &step : path.steps) {
    REQUIRE(step.frame == t);
    REQUIRE(step.frame < T);
    if (step.is_blank) {
      bool known = false;
      for (int m : blanks.durations()) known |= (m == step.value);
      REQUIRE(known);
      t += step.value;
    } else {
      REQUIRE(step.value == u);  // u-th target label, in order
      ++u;
    }
  }
  REQUIRE(t == T);
  REQUIRE(u == U);
}

}  // namespace

TEST_CASE("EnumeratePaths forced single path") {
  BlankSet n1({1});
  auto paths = EnumeratePaths(1, 0, n1);
  REQUIRE(paths.size() == 1);
  REQUIRE(paths[0].steps.size() == 1);
  CHECK(paths[0].steps[0].is_blank);
  CHECK(paths[0].steps[0].value == 1);
  CHECK(paths[0].steps[0].frame == 0);
}

TEST_CASE("EnumeratePaths T=2 U=1 N={1,2} has exactly three paths") {
  BlankSet n12({1, 2});
  auto paths = EnumeratePaths(2, 1, n12);
  REQUIRE(paths.size() == 3);
  for (const Path &p : paths) CheckPathValid(p, 2, 1, n12);
  // Lexicographic: the label-first path leads.
  CHECK_FALSE(paths[0].steps[0].is_blank);
}

TEST_CASE("EnumeratePaths compositions of 3 with parts in {1,2,3}") {
  BlankSet n123({1, 2, 3});
  auto paths = EnumeratePaths(3, 0, n123);
  REQUIRE(paths.size() == 4);
  // Deterministic lexicographic order by ascending duration:
  // 1+1+1, 1+2, 2+1, 3.
  auto durations = [](const Path &p) {
    std::vector<int> d;
    for (const auto &s : p.steps) d.push_back(s.value);
    return d;
  };
  CHECK(durations(paths[0]) == std::vector<int>{1, 1, 1});
  CHECK(durations(paths[1]) == std::vector<int>{1, 2});
  CHECK(durations(paths[2]) == std::vector<int>{2, 1});
  CHECK(durations(paths[3]) == std::vector<int>{3});
}

TEST_CASE("EnumeratePaths count matches the composition recurrence") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> durations{1};
    for (int d = 2; d <= 4; ++d) {
      if (rng.Uniform() < 0.5) durations.push_back(d);
    }
    BlankSet blanks(durations);
    int T = rng.UniformInt(1, 9);
    auto paths = EnumeratePaths(T, 0, blanks);
    CHECK(static_cast<long long>(paths.size()) == CompositionCount(T, blanks));
  }
}

TEST_CASE("EnumeratePaths paths are unique and valid on random instances") {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> durations{1};
    for (int d = 2; d <= 4; ++d) {
      if (rng.Uniform() < 0.5) durations.push_back(d);
    }
    BlankSet blanks(durations);
    int T = rng.UniformInt(1, 6);
    int U = rng.UniformInt(0, 4);
    auto paths = EnumeratePaths(T, U, blanks);
    REQUIRE(!paths.empty());
    std::set<std::vector<std::pair<int, int>>> seen;
    for (const Path &p : paths) {
      CheckPathValid(p, T, U, blanks);
      std::vector<std::pair<int, int>> key;
      for (const auto &s : p.steps) {
        key.emplace_back(s.is_blank ? 1 : 0, s.value);
      }
      CHECK(seen.insert(key).second);  // exactly once
    }
  }
}

TEST_CASE("EnumeratePaths enforces its caps") {
  BlankSet n1({1});
  CHECK_THROWS_WITH_AS(EnumeratePaths(13, 0, n1),
                       doctest::Contains("cap"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(EnumeratePaths(3, 7, n1),
                       doctest::Contains("cap"), std::invalid_argument);
  BlankSet wide({1, 2, 3, 4, 5});
  CHECK_THROWS_WITH_AS(EnumeratePaths(3, 0, wide),
                       doctest::Contains("cap"), std::invalid_argument);
}

TEST_CASE("PathWeight on uniform lattices") {
  // Single-blank path, K = 2, sigma = 0: one arc of weight -ln 2.
  BlankSet n1({1});
  auto acts = UniformActivations(1, 0, 1, 1);
  ArcWeightLattice arcs = UnderNormalize(acts, 0.0);
  auto paths = EnumeratePaths(1, 0, n1);
  std::vector<int> no_labels;
  CHECK(PathWeight(paths[0], arcs, no_labels, n1) ==
        doctest::Approx(-std::log(2.0)).epsilon(1e-12));

  // Three emissions, all arcs -ln 3.
  BlankSet n12({1, 2});
  auto acts3 = UniformActivations(2, 1, 1, 2);
  ArcWeightLattice arcs3 = UnderNormalize(acts3, 0.0);
  std::vector<int> labels{0};
  auto paths3 = EnumeratePaths(2, 1, n12);
  for (const Path &p : paths3) {
    if (p.length() == 3) {
      CHECK(PathWeight(p, arcs3, labels, n12) ==
            doctest::Approx(-3.0 * std::log(3.0)).epsilon(1e-12));
    }
  }

  // sigma = 0.05 lowers every path by exactly 0.05 * |pi|.
  ArcWeightLattice arcs_un = UnderNormalize(acts3, 0.05);
  for (const Path &p : paths3) {
    double plain = PathWeight(p, arcs3, labels, n12);
    double under = PathWeight(p, arcs_un, labels, n12);
    CHECK(under == doctest::Approx(plain - 0.05 * p.length()).epsilon(1e-12));
  }
}

TEST_CASE("BruteForceLoss frozen uniform cases") {
  // T=1, U=0, N={1}, K=2: single path of probability 1/2.
  LossConfig c1{0.0, BlankSet({1})};
  auto acts1 = UniformActivations(1, 0, 1, 1);
  std::vector<int> no_labels;
  CHECK(BruteForceLoss(acts1, no_labels, c1) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // T=2, U=1, V=1, N={1,2}, K=3: two 3-arc paths and one 2-arc path.
  LossConfig c2{0.0, BlankSet({1, 2})};
  auto acts2 = UniformActivations(2, 1, 1, 2);
  std::vector<int> labels{0};
  CHECK(BruteForceLoss(acts2, labels, c2) ==
        doctest::Approx(-std::log(5.0 / 27.0)).epsilon(1e-12));

  // Same instance under-normalized with sigma = 0.05.
  LossConfig c3{0.05, BlankSet({1, 2})};
  double expected =
      -std::log(2.0 / 27.0 * std::exp(-0.15) + 1.0 / 9.0 * std::exp(-0.10));
  CHECK(BruteForceLoss(acts2, labels, c3) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("BruteForceLoss ignores durations longer than T") {
  LossConfig with_dead{0.0, BlankSet({1, 2, 9})};
  LossConfig without{0.0, BlankSet({1, 2})};
  auto acts_dead = UniformActivations(3, 1, 2, 3);
  auto acts = UniformActivations(3, 1, 2, 2);
  // Give the dead duration a kLogZero activation so the softmax masses of
  // the live outputs are identical in both lattices.
  for (int t = 0; t < 3; ++t) {
    for (int u = 0; u <= 1; ++u) {
      acts_dead.values(t, u, 4) = kLogZero;
    }
  }
  std::vector<int> labels{1};
  CHECK(BruteForceLoss(acts_dead, labels, with_dead) ==
        doctest::Approx(BruteForceLoss(acts, labels, without))
            .epsilon(1e-12));
}

TEST_CASE("BruteForceLoss reports infeasible instances") {
  LossConfig c{0.0, BlankSet({1})};
  ActivationLattice empty(0, 1, 2, 1);
  std::vector<int> labels{0};
  CHECK_THROWS_AS(BruteForceLoss(empty, labels, c), std::invalid_argument);
}

TEST_CASE("FiniteDiffGrad single-arc lattice") {
  // Only path: the blank arc. loss = -log softmax(z)[blank], so the
  // gradient is softmax - onehot(blank): +1/2 at the label, -1/2 at the
  // blank for uniform activations.
  LossConfig c{0.0, BlankSet({1})};
  auto acts = UniformActivations(1, 0, 1, 1);
  std::vector<int> no_labels;
  Tensor3 fd = FiniteDiffGrad(acts, no_labels, c, 1e-5);
  CHECK(fd(0, 0, 0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fd(0, 0, 1) == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("FiniteDiffGrad vanishes where the loss is flat") {
  // With 1 in N every (t < T, u) slice lies on some path, so a coordinate
  // the loss ignores has to be manufactured: mask a column down to
  // kLogZero and the loss is locally independent of it.
  LossConfig c{0.0, BlankSet({1, 2})};
  auto acts = UniformActivations(2, 0, 1, 2);
  std::vector<int> no_labels;
  acts.values(0, 0, 2) = kLogZero;
  acts.values(1, 0, 2) = kLogZero;
  Tensor3 fd = FiniteDiffGrad(acts, no_labels, c, 1e-5);
  CHECK(std::abs(fd(0, 0, 2)) <= 1e-9);
  CHECK(std::abs(fd(1, 0, 2)) <= 1e-9);
}

TEST_CASE("StandardRecursionLoss agrees with brute force at N={1}") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    int T = rng.UniformInt(1, 5);
    int U = rng.UniformInt(0, 3);
    int V = rng.UniformInt(1, 4);
    ActivationLattice acts(T, U, V, 1);
    for (double &z : acts.values.data()) z = rng.Gaussian(0.0, 1.0);
    std::vector<int> labels(U);
    for (int &id : labels) id = rng.UniformInt(0, V - 1);

    LossConfig c{0.0, BlankSet({1})};
    double brute = BruteForceLoss(acts, labels, c);
    double standard = StandardRecursionLoss(acts, labels, 0.0);
    CHECK(std::abs(brute - standard) <= 1e-9);
  }
}

TEST_CASE("PathLengthExtremes") {
  BlankSet n12({1, 2});
  auto [lo, hi] = PathLengthExtremes(2, 1, n12);
  CHECK(lo == 2);  // label + duration-2 blank
  CHECK(hi == 3);  // label + two standard blanks

  BlankSet n1({1});
  auto [lo1, hi1] = PathLengthExtremes(4, 2, n1);
  CHECK(lo1 == 6);  // all paths have length T + U
  CHECK(hi1 == 6);
}
