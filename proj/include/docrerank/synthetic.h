// Copyright 2026 The docrerank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DOCRERANK_SYNTHETIC_H_
#define DOCRERANK_SYNTHETIC_H_

#include <cstdint>
#include <vector>

namespace docrerank {

// Latent-quality selection experiment: each document gets max(pool_sizes)
// candidates with q ~ N(0, 1); the QE score is q + N(0, sigma^2). For every
// pool size the reranker picks over the first n candidates.
struct SyntheticConfig {
  size_t documents = 1000;
  std::vector<int> pool_sizes = {1, 2, 4, 8, 16, 32};
  double sigma = 0.0;
  uint64_t seed = 0;
};

struct SyntheticResult {
  // Indexed like pool_sizes.
  std::vector<double> mean_selected;     // mean q of the chosen candidate
  std::vector<double> mean_running_max;  // mean of max q over the prefix
  // Documents where the chosen q differs from the prefix max of q.
  std::vector<size_t> mismatches;
};

// Per-document streams are derived from the seed, and the means are summed
// in document order, so both entry points return identical results.
SyntheticResult RunSyntheticSerial(const SyntheticConfig& cfg);
SyntheticResult RunSynthetic(const SyntheticConfig& cfg, int jobs);

}  // namespace docrerank

#endif  // DOCRERANK_SYNTHETIC_H_
