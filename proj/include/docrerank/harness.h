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

#ifndef DOCRERANK_HARNESS_H_
#define DOCRERANK_HARNESS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "docrerank/clients.h"
#include "docrerank/dataset.h"
#include "docrerank/llm_metrics.h"
#include "docrerank/qe_strategies.h"

namespace docrerank {

enum class MetricStrategy {
  kFullDoc,
  kSentenceAvg,
  kDocContext,
  kSlide,
  kGembaDa,
  kEaPrompt,
  kEaPromptCritical,
};

const char* MetricStrategyName(MetricStrategy strategy);
MetricStrategy ParseMetricStrategy(const std::string& name);
bool IsLlmStrategy(MetricStrategy strategy);

struct TranslatorSpec {
  std::string id;
  std::shared_ptr<TranslatorBackend> backend;
  DecodingConfig decoding;
  // alpha/ceiling come from here; mu_src/mu_tgt are replaced by the
  // corpus statistics of the document's language pair when available.
  TokenBudget budget;
  RetryPolicy retry;
};

struct MetricSpec {
  std::string id;
  MetricStrategy strategy = MetricStrategy::kFullDoc;
  // Learned metrics: scorer model name and backend.
  std::string model;
  std::shared_ptr<ScorerBackend> scorer;
  size_t batch_limit = 32;
  SlideConfig slide;
  int context_k = 2;
  // LLM metrics.
  std::shared_ptr<ChatBackend> chat;
  JudgeConfig judge;
  std::shared_ptr<const PromptSet> prompts;  // null = built-in prompts
  // Id of another metric in the grid used when every candidate is
  // discarded; empty for none.
  std::string fallback;
  RetryPolicy retry;
};

// Reference-based evaluator reached through the scorer contract (pairs
// carry the reference).
struct EvaluatorSpec {
  std::string id;
  std::string model;
  std::shared_ptr<ScorerBackend> scorer;
  RetryPolicy retry;
};

struct GridOptions {
  std::vector<int> pool_sizes = {1, 2, 4, 8, 16, 32};
  uint64_t seed = 0;
  int jobs = 1;
  std::map<std::string, LanguagePairStats> pair_stats;  // key "en-ja"
};

struct ExperimentRecord {
  std::string doc_id;
  std::string translator_id;
  std::string metric_id;
  int pool_size = 0;
  int chosen_index = 0;
  std::map<std::string, double> eval_scores;
  // "generate", "qe", "evaluate" in seconds.
  std::map<std::string, double> runtimes;
  bool used_fallback = false;
  bool tie_broken = false;
  std::string length_bucket;
  int src_token_count = 0;
  Granularity granularity = Granularity::kFullDocument;
  // QE values of the pool prefix under the metric that decided the
  // selection; nullopt for discarded candidates.
  std::vector<std::optional<double>> qe_scores;
};

struct CellFailure {
  std::string doc_id;
  std::string translator_id;
  std::string metric_id;
  int pool_size = 0;
  std::string reason;
};

struct GridResult {
  std::vector<ExperimentRecord> records;
  std::vector<CellFailure> failures;
};

// Validates specs before any backend call (kInvalidConfig).
void ValidateGrid(const std::vector<TranslatorSpec>& translators,
                  const std::vector<MetricSpec>& metrics,
                  const std::vector<EvaluatorSpec>& evaluators, const GridOptions& options);

// Every (doc, translator) pair generates its pool once at the largest pool
// size; each metric scores that pool once and every pool size selects over
// a prefix of those scores. Work units run on an OpenMP team of
// options.jobs threads. Cell failures are recorded, never thrown.
GridResult RunGrid(const std::vector<ExperimentDoc>& corpus,
                   const std::vector<TranslatorSpec>& translators,
                   const std::vector<MetricSpec>& metrics,
                   const std::vector<EvaluatorSpec>& evaluators, const GridOptions& options);

// Same grid, one unit at a time on the calling thread.
GridResult RunGridSerial(const std::vector<ExperimentDoc>& corpus,
                         const std::vector<TranslatorSpec>& translators,
                         const std::vector<MetricSpec>& metrics,
                         const std::vector<EvaluatorSpec>& evaluators, const GridOptions& options);

// Scores every candidate of `pool` under `metric`. qe_seconds receives the
// scoring time attributed to each candidate.
std::vector<DocScore> ScoreCandidates(const MetricSpec& metric, const ExperimentDoc& doc,
                                      const CandidatePool& pool, uint64_t seed,
                                      std::vector<double>* qe_seconds = nullptr);

int DefaultJobs();

}  // namespace docrerank

#endif  // DOCRERANK_HARNESS_H_
