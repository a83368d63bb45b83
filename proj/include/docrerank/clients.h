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

#ifndef DOCRERANK_CLIENTS_H_
#define DOCRERANK_CLIENTS_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docrerank/qe_strategies.h"
#include "docrerank/reranker.h"
#include "docrerank/text.h"

namespace docrerank {

enum class DecodingStrategy { kNucleus, kEpsilon, kDiverseBeam };

const char* StrategyName(DecodingStrategy strategy);
DecodingStrategy ParseStrategy(const std::string& name);

// Sampling/beam parameters forwarded to a translation backend. Only the
// fields relevant to `strategy` are sent.
struct DecodingConfig {
  DecodingStrategy strategy = DecodingStrategy::kNucleus;
  double p = 0.9;
  double epsilon = 0.02;
  double temperature = 0.6;
  int groups = 16;
  double diversity = 0.5;
  int num_candidates = 1;

  static DecodingConfig Nucleus(double p, double temperature);
  static DecodingConfig Epsilon(double epsilon, double temperature);
  static DecodingConfig DiverseBeam(int groups, double diversity);

  // Throws kInvalidConfig.
  void Validate() const;
};

// Adaptive generation budget:
//   min(ceiling, ceil(L_in * alpha_m * mu_tgt / mu_src + alpha_a))
struct TokenBudget {
  double alpha_a = 10.0;
  double alpha_m = 2.0;
  int ceiling = 2048;
  double mu_src = 1.0;
  double mu_tgt = 1.0;

  void Validate() const;
};

int MaxTokens(size_t input_tokens, const TokenBudget& budget);

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{100};
  double multiplier = 2.0;
};

// ---- Backend interfaces ---------------------------------------------------

struct TranslateRequest {
  std::string source_text;
  Language source_lang = Language::kEnglish;
  Language target_lang = Language::kJapanese;
  DecodingConfig decoding;  // decoding.num_candidates is the request's n
  int max_tokens = 0;
  uint64_t seed = 0;
};

struct TranslatedCandidate {
  std::string text;
  std::string finish_reason;  // "stop" or "length"
};

struct TranslateResponse {
  std::vector<TranslatedCandidate> candidates;
};

struct BackendCapabilities {
  std::vector<DecodingStrategy> strategies = {DecodingStrategy::kNucleus, DecodingStrategy::kEpsilon,
                                              DecodingStrategy::kDiverseBeam};
  int max_batch = 32;
};

class TranslatorBackend {
 public:
  virtual ~TranslatorBackend() = default;
  virtual TranslateResponse Translate(const TranslateRequest& request) = 0;
  virtual BackendCapabilities Capabilities() const { return {}; }
  // Token count from the backend's own tokenizer, when it exposes one.
  virtual std::optional<size_t> CountTokens(std::string_view, Language) { return std::nullopt; }
  virtual std::string Endpoint() const = 0;
};

class ScorerBackend {
 public:
  virtual ~ScorerBackend() = default;
  // One score per request, in request order.
  virtual std::vector<double> Score(const std::string& model,
                                    std::span<const ScoreRequest> batch) = 0;
  virtual std::string Endpoint() const = 0;
};

struct ChatRequest {
  std::string prompt;
  double temperature = 0.0;
  int max_output_tokens = 16;
  uint64_t seed = 0;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string Complete(const ChatRequest& request) = 0;
  virtual std::string Endpoint() const = 0;
};

// ---- Client operations ----------------------------------------------------

// Rejects decoding parameters the backend cannot honour (kInvalidConfig).
void ValidateAgainstBackend(const DecodingConfig& cfg, const BackendCapabilities& caps);

// Runs `call`, retrying BackendUnreachable with exponential backoff.
template <typename Fn>
auto WithRetries(const RetryPolicy& policy, Fn&& call) -> decltype(call());

// Input length used for the token budget: the backend's count if it reports
// one, otherwise the heuristic estimate.
size_t InputTokens(TranslatorBackend& backend, std::string_view text, Language lang);

// Requests cfg.num_candidates translations, in chunks of at most the
// backend's batch limit. Candidates keep the backend's order. A short
// response marks the pool partial rather than failing.
CandidatePool GeneratePool(TranslatorBackend& backend, const Document& src, Language target_lang,
                           const DecodingConfig& cfg, const TokenBudget& budget, uint64_t seed,
                           const RetryPolicy& retry = {});

struct ScoreResult {
  std::vector<double> scores;
  std::vector<size_t> batch_sizes;
  std::vector<double> batch_seconds;
};

// Chunks requests into batches of at most batch_limit and returns scores in
// request order. Throws kScoreCountMismatch on a wrong-length response.
ScoreResult ScoreRequests(ScorerBackend& backend, const std::string& model,
                          std::span<const ScoreRequest> requests, size_t batch_limit,
                          const RetryPolicy& retry = {});

}  // namespace docrerank

#include "docrerank/clients_inl.h"

#endif  // DOCRERANK_CLIENTS_H_
