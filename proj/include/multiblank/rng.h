// multiblank/rng.h
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

#ifndef MULTIBLANK_RNG_H_
#define MULTIBLANK_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace multiblank {

// mt19937_64 with hand-rolled draws. The standard distributions are
// implementation-defined, so reports and checkpoints would not reproduce
// across standard libraries; these transforms are pinned.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t Next() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double Uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [lo, hi], inclusive.
  int UniformInt(int lo, int hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

  // Box-Muller; draws two uniforms per call.
  double Gaussian(double mean, double stddev) {
    double u1 = 0.0;
    do {
      u1 = Uniform();
    } while (u1 == 0.0);
    double u2 = Uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * kPi * u2);
  }

  template <typename T>
  void Shuffle(std::vector<T> &items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(UniformInt(0, static_cast<int>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 gen_;
};

}  // namespace multiblank

#endif  // MULTIBLANK_RNG_H_
