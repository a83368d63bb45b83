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

#include "docrerank/synthetic.h"

#include <algorithm>

#include "docrerank/errors.h"
#include "docrerank/reranker.h"
#include "docrerank/rng.h"

namespace docrerank {
namespace {

struct DocOutcome {
  std::vector<double> selected;
  std::vector<double> running_max;
};

void Validate(const SyntheticConfig& cfg) {
  if (cfg.documents == 0) throw Error(ErrorCode::kInvalidConfig, "need at least one document");
  if (cfg.pool_sizes.empty() || cfg.pool_sizes.front() < 1 ||
      !std::is_sorted(cfg.pool_sizes.begin(), cfg.pool_sizes.end())) {
    throw Error(ErrorCode::kInvalidConfig, "pool sizes must be sorted and >= 1");
  }
  if (cfg.sigma < 0.0) throw Error(ErrorCode::kInvalidConfig, "sigma must be >= 0");
}

DocOutcome SimulateDoc(const SyntheticConfig& cfg, size_t doc) {
  const size_t max_pool = static_cast<size_t>(cfg.pool_sizes.back());
  SplitMix64 rng(DeriveSeed(cfg.seed, "synthetic", static_cast<uint64_t>(doc)));
  std::vector<double> q(max_pool);
  std::vector<DocScore> scores;
  scores.reserve(max_pool);
  for (size_t i = 0; i < max_pool; ++i) {
    q[i] = rng.NextNormal();
    const double noise = rng.NextNormal();
    scores.push_back(DocScore::Ok(q[i] + cfg.sigma * noise, "synthetic"));
  }

  DocOutcome out;
  for (int n : cfg.pool_sizes) {
    const size_t size = static_cast<size_t>(n);
    const RerankOutcome pick =
        SelectBest(std::span<const DocScore>(scores.data(), size), std::nullopt,
                   DeriveSeed(cfg.seed, "tie", static_cast<uint64_t>(doc), static_cast<uint64_t>(n)));
    out.selected.push_back(q[static_cast<size_t>(pick.chosen_index)]);
    out.running_max.push_back(*std::max_element(q.begin(), q.begin() + static_cast<long>(size)));
  }
  return out;
}

SyntheticResult Reduce(const SyntheticConfig& cfg, const std::vector<DocOutcome>& docs) {
  const size_t k = cfg.pool_sizes.size();
  SyntheticResult r;
  r.mean_selected.assign(k, 0.0);
  r.mean_running_max.assign(k, 0.0);
  r.mismatches.assign(k, 0);
  for (const DocOutcome& d : docs) {
    for (size_t j = 0; j < k; ++j) {
      r.mean_selected[j] += d.selected[j];
      r.mean_running_max[j] += d.running_max[j];
      if (d.selected[j] != d.running_max[j]) ++r.mismatches[j];
    }
  }
  for (size_t j = 0; j < k; ++j) {
    r.mean_selected[j] /= static_cast<double>(docs.size());
    r.mean_running_max[j] /= static_cast<double>(docs.size());
  }
  return r;
}

}  // namespace

SyntheticResult RunSyntheticSerial(const SyntheticConfig& cfg) {
  Validate(cfg);
  std::vector<DocOutcome> docs(cfg.documents);
  for (size_t d = 0; d < cfg.documents; ++d) docs[d] = SimulateDoc(cfg, d);
  return Reduce(cfg, docs);
}

SyntheticResult RunSynthetic(const SyntheticConfig& cfg, int jobs) {
  Validate(cfg);
  if (jobs < 1) throw Error(ErrorCode::kInvalidConfig, "jobs must be >= 1");
  std::vector<DocOutcome> docs(cfg.documents);
  const long count = static_cast<long>(cfg.documents);
#pragma omp parallel for schedule(static) num_threads(jobs)
  for (long d = 0; d < count; ++d) {
    docs[static_cast<size_t>(d)] = SimulateDoc(cfg, static_cast<size_t>(d));
  }
  return Reduce(cfg, docs);
}

}  // namespace docrerank
