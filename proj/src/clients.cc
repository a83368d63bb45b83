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

#include "docrerank/clients.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "docrerank/errors.h"
#include "docrerank/rng.h"
#include "docrerank/timing.h"

namespace docrerank {
namespace {

std::string FormatReal(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

const char* StrategyName(DecodingStrategy strategy) {
  switch (strategy) {
    case DecodingStrategy::kNucleus: return "nucleus";
    case DecodingStrategy::kEpsilon: return "epsilon";
    case DecodingStrategy::kDiverseBeam: return "diverse_beam";
  }
  return "nucleus";
}

DecodingStrategy ParseStrategy(const std::string& name) {
  if (name == "nucleus") return DecodingStrategy::kNucleus;
  if (name == "epsilon") return DecodingStrategy::kEpsilon;
  if (name == "diverse_beam") return DecodingStrategy::kDiverseBeam;
  throw Error(ErrorCode::kInvalidConfig, "unknown decoding strategy '" + name + "'");
}

DecodingConfig DecodingConfig::Nucleus(double p, double temperature) {
  DecodingConfig cfg;
  cfg.strategy = DecodingStrategy::kNucleus;
  cfg.p = p;
  cfg.temperature = temperature;
  return cfg;
}

DecodingConfig DecodingConfig::Epsilon(double epsilon, double temperature) {
  DecodingConfig cfg;
  cfg.strategy = DecodingStrategy::kEpsilon;
  cfg.epsilon = epsilon;
  cfg.temperature = temperature;
  return cfg;
}

DecodingConfig DecodingConfig::DiverseBeam(int groups, double diversity) {
  DecodingConfig cfg;
  cfg.strategy = DecodingStrategy::kDiverseBeam;
  cfg.groups = groups;
  cfg.diversity = diversity;
  cfg.temperature = 0.0;
  return cfg;
}

void DecodingConfig::Validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::kInvalidConfig, why); };
  if (num_candidates < 1) fail("num_candidates must be >= 1");
  if (!(temperature >= 0.0)) fail("temperature must be >= 0");
  switch (strategy) {
    case DecodingStrategy::kNucleus:
      if (!(p > 0.0 && p <= 1.0)) fail("nucleus p must be in (0, 1]");
      break;
    case DecodingStrategy::kEpsilon:
      if (!(epsilon >= 0.0)) fail("epsilon must be >= 0");
      break;
    case DecodingStrategy::kDiverseBeam:
      if (groups < 1) fail("diverse beam needs groups >= 1");
      if (!(diversity >= 0.0)) fail("diversity strength must be >= 0");
      break;
  }
}

void TokenBudget::Validate() const {
  if (ceiling < 1) throw Error(ErrorCode::kInvalidConfig, "token ceiling must be >= 1");
  if (!(mu_src > 0.0) || !(mu_tgt > 0.0) || !std::isfinite(mu_src) || !std::isfinite(mu_tgt)) {
    throw Error(ErrorCode::kInvalidConfig, "mean token lengths must be finite and positive");
  }
  if (!(alpha_m >= 0.0) || !std::isfinite(alpha_a)) {
    throw Error(ErrorCode::kInvalidConfig, "token margins must be finite, alpha_m >= 0");
  }
}

int MaxTokens(size_t input_tokens, const TokenBudget& budget) {
  const double raw = static_cast<double>(input_tokens) * budget.alpha_m *
                         (budget.mu_tgt / budget.mu_src) +
                     budget.alpha_a;
  const double limit = std::ceil(raw);
  if (limit >= static_cast<double>(budget.ceiling)) return budget.ceiling;
  return static_cast<int>(std::max(limit, 0.0));
}

void ValidateAgainstBackend(const DecodingConfig& cfg, const BackendCapabilities& caps) {
  cfg.Validate();
  if (std::find(caps.strategies.begin(), caps.strategies.end(), cfg.strategy) ==
      caps.strategies.end()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("backend does not support decoding strategy ") +
                    StrategyName(cfg.strategy));
  }
  if (caps.max_batch < 1) throw Error(ErrorCode::kInvalidConfig, "backend batch limit < 1");
}

size_t InputTokens(TranslatorBackend& backend, std::string_view text, Language lang) {
  if (auto counted = backend.CountTokens(text, lang)) return *counted;
  return EstimateTokens(text, lang);
}

CandidatePool GeneratePool(TranslatorBackend& backend, const Document& src, Language target_lang,
                           const DecodingConfig& cfg, const TokenBudget& budget, uint64_t seed,
                           const RetryPolicy& retry) {
  cfg.Validate();
  budget.Validate();
  const BackendCapabilities caps = backend.Capabilities();
  const int max_tokens = MaxTokens(InputTokens(backend, src.text, src.language), budget);
  const size_t wanted = static_cast<size_t>(cfg.num_candidates);
  const size_t chunk_limit = static_cast<size_t>(std::max(caps.max_batch, 1));

  CandidatePool pool;
  pool.requested = wanted;
  for (size_t chunk = 0; pool.size() < wanted; ++chunk) {
    TranslateRequest request;
    request.source_text = src.text;
    request.source_lang = src.language;
    request.target_lang = target_lang;
    request.decoding = cfg;
    request.decoding.num_candidates = static_cast<int>(std::min(chunk_limit, wanted - pool.size()));
    request.max_tokens = max_tokens;
    request.seed = DeriveSeed(seed, static_cast<uint64_t>(chunk));

    StageTimer timer;
    // A retried request replaces the failed one wholesale, so retries cannot
    // duplicate candidates.
    TranslateResponse response = WithRetries(retry, [&] { return backend.Translate(request); });
    const double elapsed = timer.Elapsed();

    const size_t take = std::min(response.candidates.size(),
                                 static_cast<size_t>(request.decoding.num_candidates));
    const double per_candidate = take > 0 ? elapsed / static_cast<double>(take) : 0.0;
    for (size_t i = 0; i < take; ++i) {
      Candidate cand;
      cand.index = static_cast<int>(pool.size());
      cand.text = std::move(response.candidates[i].text);
      cand.latency_seconds = per_candidate;
      cand.decode_meta["strategy"] = StrategyName(cfg.strategy);
      cand.decode_meta["temperature"] = FormatReal(cfg.temperature);
      cand.decode_meta["seed"] = std::to_string(request.seed);
      cand.decode_meta["max_tokens"] = std::to_string(max_tokens);
      cand.decode_meta["finish_reason"] = response.candidates[i].finish_reason;
      if (response.candidates[i].finish_reason == "length") cand.decode_meta["truncated"] = "true";
      pool.candidates.push_back(std::move(cand));
    }
    if (take < static_cast<size_t>(request.decoding.num_candidates)) {
      pool.partial = true;
      break;
    }
  }
  return pool;
}

ScoreResult ScoreRequests(ScorerBackend& backend, const std::string& model,
                          std::span<const ScoreRequest> requests, size_t batch_limit,
                          const RetryPolicy& retry) {
  if (batch_limit < 1) throw Error(ErrorCode::kInvalidConfig, "batch limit must be >= 1");
  ScoreResult out;
  out.scores.reserve(requests.size());
  for (size_t begin = 0; begin < requests.size(); begin += batch_limit) {
    const auto batch = requests.subspan(begin, std::min(batch_limit, requests.size() - begin));
    StageTimer timer;
    std::vector<double> scores = WithRetries(retry, [&] { return backend.Score(model, batch); });
    out.batch_seconds.push_back(timer.Elapsed());
    if (scores.size() != batch.size()) {
      throw Error(ErrorCode::kScoreCountMismatch,
                  backend.Endpoint() + " returned " + std::to_string(scores.size()) +
                      " scores for " + std::to_string(batch.size()) + " pairs");
    }
    out.batch_sizes.push_back(batch.size());
    out.scores.insert(out.scores.end(), scores.begin(), scores.end());
  }
  return out;
}

}  // namespace docrerank
