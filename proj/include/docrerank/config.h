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

#ifndef DOCRERANK_CONFIG_H_
#define DOCRERANK_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "docrerank/clients.h"
#include "docrerank/harness.h"
#include "json.hpp"

namespace docrerank {

enum class BackendKind { kTranslator, kScorer, kChat };

struct BackendConfig {
  BackendKind kind = BackendKind::kScorer;
  std::string url;  // scheme://host:port
  std::string path;
  std::string credential_env;
  int timeout_seconds = 120;
  int max_batch = 32;  // translators only
};

struct TranslatorConfig {
  std::string id;
  std::string backend;
  DecodingConfig decoding;
  TokenBudget budget;  // mu values are taken from the corpus at run time
};

struct MetricConfig {
  std::string id;
  MetricStrategy strategy = MetricStrategy::kFullDoc;
  std::string backend;
  std::string model;  // learned metrics
  size_t batch_limit = 32;
  SlideConfig slide;
  int context_k = 2;
  JudgeConfig judge;
  std::string fallback;
};

struct EvaluatorConfig {
  std::string id;
  std::string backend;
  std::string model;
};

// Modeled latencies of the --mock backends.
struct MockConfig {
  double generate_seconds_per_candidate = 0.0;
  double qe_seconds_per_request = 0.0;
  double chat_seconds_per_call = 0.0;
  double evaluate_seconds_per_request = 0.0;
  bool simulate = true;  // false sleeps for real
  // "hash" answers every prompt; "always_fail" never returns a parseable
  // reply, so judge metrics discard everything.
  std::string chat_mode = "hash";
};

struct RunConfig {
  std::string corpus;               // corpus JSON lines written by ingest
  std::vector<std::string> inputs;  // raw record files read by ingest
  std::string prompts_dir;          // empty = built-in prompts
  std::map<std::string, BackendConfig> backends;
  std::vector<TranslatorConfig> translators;
  std::vector<MetricConfig> metrics;
  std::vector<EvaluatorConfig> evaluators;
  std::vector<int> pool_sizes = {1, 2, 4, 8, 16, 32};
  std::vector<int> bucket_edges;  // empty = default edges
  uint64_t seed = 0;
  int jobs = 0;  // 0 = one per logical processor
  bool mix_paragraphs = true;
  std::string output_dir = "out";
  RetryPolicy retry;
  MockConfig mock;

  // The full grid, every backend on localhost.
  static RunConfig Defaults();
  // Keys missing from `j` keep their defaults; unknown keys are rejected.
  static RunConfig FromJson(const nlohmann::json& j);
  static RunConfig FromFile(const std::string& path);
  // Every field, in a fixed key order.
  nlohmann::ordered_json ToJson() const;

  // Throws kInvalidConfig. Runs before any backend is contacted.
  void Validate() const;

  // Keeps only the listed ids, in the listed order. Metrics named as a
  // fallback of a kept metric stay in the grid. Throws kInvalidConfig for
  // unknown ids.
  void SelectTranslators(const std::vector<std::string>& ids);
  void SelectMetrics(const std::vector<std::string>& ids);

  const std::vector<int>& Edges() const;
};

struct BuiltGrid {
  std::vector<TranslatorSpec> translators;
  std::vector<MetricSpec> metrics;
  std::vector<EvaluatorSpec> evaluators;
  // Base URLs of every referenced HTTP backend (empty for mocks).
  std::vector<std::string> endpoints;
};

// Instantiates HTTP backends, or deterministic in-process ones when `mock`.
BuiltGrid BuildGrid(const RunConfig& config, bool mock);

// Splits "1,2,4" style lists.
std::vector<int> ParseIntList(const std::string& text);
std::vector<std::string> ParseIdList(const std::string& text);

}  // namespace docrerank

#endif  // DOCRERANK_CONFIG_H_
