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

#ifndef DOCRERANK_RERANKER_H_
#define DOCRERANK_RERANKER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docrerank/qe_strategies.h"

namespace docrerank {

struct Candidate {
  int index = 0;  // generation order within the pool
  std::string text;
  std::map<std::string, std::string> decode_meta;
  double latency_seconds = 0.0;
};

struct CandidatePool {
  std::vector<Candidate> candidates;
  size_t requested = 0;
  // Backend returned fewer candidates than requested.
  bool partial = false;

  size_t size() const { return candidates.size(); }
};

struct RerankOutcome {
  int chosen_index = 0;
  // Metric whose scores decided the selection (the fallback's id when
  // used_fallback is set).
  std::string metric_id;
  int pool_size = 0;
  std::vector<DocScore> scores;
  bool used_fallback = false;
  bool tie_broken = false;
};

// First n candidates in generation order. Throws kPoolTooSmall unless
// 1 <= n <= pool.size().
CandidatePool TrimPool(const CandidatePool& pool, size_t n);

// Argmax over candidates whose score is ok. Exact ties are broken by a
// uniform draw seeded with `seed`. When every primary score is discarded
// the fallback scores (aligned to the same candidates) decide instead.
// Throws kNoValidCandidate if nothing is left to choose from.
RerankOutcome SelectBest(std::span<const DocScore> scores,
                         std::optional<std::span<const DocScore>> fallback, uint64_t seed);

// Tie-break seed for one grid cell.
uint64_t TieBreakSeed(uint64_t run_seed, const std::string& doc_id, const std::string& metric_id,
                      int pool_size);

}  // namespace docrerank

#endif  // DOCRERANK_RERANKER_H_
