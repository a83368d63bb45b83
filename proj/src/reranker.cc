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

#include "docrerank/reranker.h"

#include "docrerank/errors.h"
#include "docrerank/rng.h"

namespace docrerank {
namespace {

// Indices tied at the maximum ok value; empty when nothing is ok.
std::vector<int> ArgmaxSet(std::span<const DocScore> scores) {
  std::vector<int> best;
  double best_value = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    const DocScore& s = scores[i];
    if (!s.ok() || !s.value.has_value()) continue;
    const double v = *s.value;
    if (best.empty() || v > best_value) {
      best.assign(1, static_cast<int>(i));
      best_value = v;
    } else if (v == best_value) {
      best.push_back(static_cast<int>(i));
    }
  }
  return best;
}

}  // namespace

CandidatePool TrimPool(const CandidatePool& pool, size_t n) {
  if (n < 1 || n > pool.size()) {
    throw Error(ErrorCode::kPoolTooSmall, "cannot trim a pool of " + std::to_string(pool.size()) +
                                              " candidates to " + std::to_string(n));
  }
  CandidatePool out;
  out.candidates.assign(pool.candidates.begin(), pool.candidates.begin() + static_cast<long>(n));
  out.requested = n;
  out.partial = false;
  return out;
}

RerankOutcome SelectBest(std::span<const DocScore> scores,
                         std::optional<std::span<const DocScore>> fallback, uint64_t seed) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyScores, "no candidates to select from");
  if (fallback && fallback->size() != scores.size()) {
    throw Error(ErrorCode::kLengthMismatch, "fallback scores are not aligned with candidates");
  }

  RerankOutcome out;
  out.pool_size = static_cast<int>(scores.size());
  std::span<const DocScore> used = scores;
  std::vector<int> best = ArgmaxSet(scores);
  if (best.empty() && fallback) {
    used = *fallback;
    best = ArgmaxSet(used);
    out.used_fallback = true;
  }
  if (best.empty()) {
    throw Error(ErrorCode::kNoValidCandidate,
                std::string("all ") + std::to_string(scores.size()) + " candidates discarded" +
                    (fallback ? " under both primary and fallback metrics" : " and no fallback"));
  }

  if (best.size() == 1) {
    out.chosen_index = best.front();
  } else {
    SplitMix64 rng(seed);
    out.chosen_index = best[rng.UniformIndex(best.size())];
    out.tie_broken = true;
  }
  out.metric_id = used[static_cast<size_t>(out.chosen_index)].metric_id;
  out.scores.assign(used.begin(), used.end());
  return out;
}

uint64_t TieBreakSeed(uint64_t run_seed, const std::string& doc_id, const std::string& metric_id,
                      int pool_size) {
  return DeriveSeed(run_seed, doc_id, metric_id, static_cast<uint64_t>(pool_size));
}

}  // namespace docrerank
