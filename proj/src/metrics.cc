// multiblank/metrics.cc
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

#include "multiblank/metrics.h"

#include <algorithm>
#include <stdexcept>

namespace multiblank {

int EditDistance(std::span<const int> a, std::span<const int> b) {
  const std::size_t n = b.size();
  std::vector<int> prev(n + 1), cur(n + 1);
  for (std::size_t j = 0; j <= n; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= n; ++j) {
      int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

double TokenErrorRate(std::span<const std::vector<int>> references,
                      std::span<const std::vector<int>> hypotheses) {
  if (references.size() != hypotheses.size()) {
    throw std::invalid_argument("TokenErrorRate: sequence count mismatch");
  }
  long long errors = 0, tokens = 0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    errors += EditDistance(references[i], hypotheses[i]);
    tokens += static_cast<long long>(references[i].size());
  }
  if (tokens == 0) return 0.0;
  return static_cast<double>(errors) / static_cast<double>(tokens);
}

}  // namespace multiblank
