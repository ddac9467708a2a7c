// tests/test_numerics.cc
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
#include <limits>
#include <vector>

#include "doctest.h"
#include "multiblank/numerics.h"
#include "multiblank/rng.h"

using namespace multiblank;

TEST_CASE("LogSumExp basics") {
  std::vector<double> two_equal{0.0, 0.0};
  CHECK(LogSumExp(two_equal) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  std::vector<double> single{-3.71};
  CHECK(LogSumExp(single) == doctest::Approx(-3.71).epsilon(1e-15));

  std::vector<double> with_zero{kLogZero, 0.0};
  CHECK(LogSumExp(with_zero) == doctest::Approx(0.0).epsilon(1e-15));

  std::vector<double> all_zero{kLogZero, kLogZero};
  CHECK(LogSumExp(all_zero) == kLogZero);

  CHECK_THROWS_AS(LogSumExp(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("LogSumExp two-argument form matches the general one") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    double a = rng.Uniform(-20.0, 5.0);
    double b = rng.Uniform(-20.0, 5.0);
    std::vector<double> both{a, b};
    CHECK(LogSumExp(a, b) == doctest::Approx(LogSumExp(both)).epsilon(1e-13));
  }
  CHECK(LogSumExp(kLogZero, kLogZero) == kLogZero);
  CHECK(LogSumExp(-1.5, kLogZero) == doctest::Approx(-1.5));
}

TEST_CASE("LogSumExp is permutation invariant and shift covariant") {
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    int n = rng.UniformInt(1, 8);
    std::vector<double> v(n);
    for (double &x : v) x = rng.Uniform(-10.0, 10.0);
    double base = LogSumExp(v);

    std::vector<double> perm = v;
    rng.Shuffle(perm);
    CHECK(LogSumExp(perm) == doctest::Approx(base).epsilon(1e-13));

    double c = rng.Uniform(-5.0, 5.0);
    std::vector<double> shifted = v;
    for (double &x : shifted) x += c;
    CHECK(LogSumExp(shifted) == doctest::Approx(base + c).epsilon(1e-12));
  }
}

TEST_CASE("LogSoftmax uniform and stability cases") {
  std::vector<double> uniform{0.0, 0.0, 0.0};
  auto out = LogSoftmax(uniform);
  for (double v : out) {
    CHECK(v == doctest::Approx(-std::log(3.0)).epsilon(1e-12));
  }

  std::vector<double> wide{1000.0, 0.0};
  auto stable = LogSoftmax(wide);
  CHECK(stable[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(stable[1] == doctest::Approx(-1000.0).epsilon(1e-12));
  CHECK(std::isfinite(stable[0]));
  CHECK(std::isfinite(stable[1]));
}

TEST_CASE("LogSoftmax exp-sums to one and preserves the argmax") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    int n = rng.UniformInt(1, 9);
    std::vector<double> v(n);
    for (double &x : v) x = rng.Uniform(-4.0, 4.0);
    auto out = LogSoftmax(v);

    double sum = 0.0;  // direct summation check
    for (double x : out) sum += std::exp(x);
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    auto arg = [](const std::vector<double> &xs) {
      int best = 0;
      for (int k = 1; k < static_cast<int>(xs.size()); ++k) {
        if (xs[k] > xs[best]) best = k;
      }
      return best;
    };
    CHECK(arg(v) == arg(out));

    // log_softmax(v) == v - LogSumExp(v), elementwise.
    double lse = LogSumExp(v);
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(out[k] - (v[k] - lse)) <= 1e-12);
    }
  }
}

TEST_CASE("LogSoftmax rejects non-finite input") {
  std::vector<double> bad{0.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_AS(LogSoftmax(bad), std::invalid_argument);
  std::vector<double> inf{0.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(LogSoftmax(inf), std::invalid_argument);
}

TEST_CASE("Tensor3 is row-major with (t, u, k) index order") {
  Tensor3 t(2, 3, 4);
  CHECK(t.size() == 24);
  t(1, 2, 3) = 42.0;
  CHECK(t.data()[(1 * 3 + 2) * 4 + 3] == 42.0);
  t.data()[(0 * 3 + 1) * 4 + 2] = -7.0;
  CHECK(t(0, 1, 2) == -7.0);
  CHECK(t.Slice(1, 2)[3] == 42.0);
}

TEST_CASE("Matrix layout") {
  Matrix m(3, 2, 1.5);
  CHECK(m.size() == 6);
  m(2, 1) = 9.0;
  CHECK(m.data()[2 * 2 + 1] == 9.0);
  CHECK(m.Row(2)[1] == 9.0);
}
