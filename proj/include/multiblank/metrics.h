// multiblank/metrics.h
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

#ifndef MULTIBLANK_METRICS_H_
#define MULTIBLANK_METRICS_H_

#include <span>
#include <vector>

namespace multiblank {

// Levenshtein distance over token id sequences.
int EditDistance(std::span<const int> a, std::span<const int> b);

// Sum of edit distances divided by total reference tokens. Zero when the
// reference set is empty.
double TokenErrorRate(std::span<const std::vector<int>> references,
                      std::span<const std::vector<int>> hypotheses);

}  // namespace multiblank

#endif  // MULTIBLANK_METRICS_H_
