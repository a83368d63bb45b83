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

#ifndef DOCRERANK_MOCK_BACKENDS_H_
#define DOCRERANK_MOCK_BACKENDS_H_

// Deterministic in-process backends used by --mock runs and the tests.

#include <atomic>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "docrerank/clients.h"
#include "docrerank/timing.h"

namespace docrerank {

// Produces perturbed copies of the source, sentence by sentence, seeded by
// the request seed and candidate position.
class MockTranslator : public TranslatorBackend {
 public:
  struct Options {
    std::string id = "mock";
    LatencyModel latency;  // per_item_seconds is per candidate
    // Each output sentence is repeated this many times (to overrun budgets).
    int verbosity = 1;
    int max_batch = 32;
    // Return this many fewer candidates than requested.
    int short_by = 0;
    // Throw BackendUnreachable on the first N calls.
    int unreachable_calls = 0;
    std::vector<DecodingStrategy> strategies = {DecodingStrategy::kNucleus, DecodingStrategy::kEpsilon,
                                                DecodingStrategy::kDiverseBeam};
  };

  explicit MockTranslator(Options options)
      : options_(std::move(options)), failures_left_(options_.unreachable_calls) {}

  TranslateResponse Translate(const TranslateRequest& request) override;
  BackendCapabilities Capabilities() const override;
  std::string Endpoint() const override { return "mock://translator/" + options_.id; }

  int calls() const { return calls_.load(); }
  int candidates_served() const { return served_.load(); }
  std::vector<TranslateRequest> requests() const;

 private:
  Options options_;
  std::atomic<int> calls_{0};
  std::atomic<int> served_{0};
  std::atomic<int> failures_left_;
  mutable std::mutex mu_;
  std::vector<TranslateRequest> log_;
};

// Hash-derived score in [0, 1) per (model, pair). Same body, same scores.
double MockScore(const std::string& model, const ScoreRequest& request);

class MockScorer : public ScorerBackend {
 public:
  struct Options {
    LatencyModel latency;  // per_item_seconds is per pair
    // Return one score fewer than asked for.
    bool drop_last = false;
  };

  MockScorer() = default;
  explicit MockScorer(Options options) : options_(options) {}

  std::vector<double> Score(const std::string& model, std::span<const ScoreRequest> batch) override;
  std::string Endpoint() const override { return "mock://scorer"; }

  int calls() const { return calls_.load(); }
  std::vector<size_t> batch_sizes() const;

 private:
  Options options_;
  std::atomic<int> calls_{0};
  mutable std::mutex mu_;
  std::vector<size_t> batch_sizes_;
};

class MockChat : public ChatBackend {
 public:
  enum class Mode {
    kHash,        // a parseable reply derived from the prompt
    kAlwaysFail,  // never parseable
    kScripted,    // script[k] on the k-th call for the same prompt (last entry repeats)
  };
  struct Options {
    Mode mode = Mode::kHash;
    std::vector<std::string> script;
    LatencyModel latency;
    int unreachable_calls = 0;
  };

  MockChat() = default;
  explicit MockChat(Options options)
      : options_(std::move(options)), unreachable_left_(options_.unreachable_calls) {}

  std::string Complete(const ChatRequest& request) override;
  std::string Endpoint() const override { return "mock://chat"; }

  std::vector<double> temperatures() const;
  int calls() const;

 private:
  Options options_;
  mutable std::mutex mu_;
  std::vector<double> temperatures_;
  std::map<uint64_t, int> per_prompt_;
  int unreachable_left_ = 0;
  int calls_ = 0;
};

// Synthetic-quality backends: each candidate carries a latent quality
// q ~ N(0, 1) in its text; the scorer observes q + N(0, sigma^2) and an
// evaluator (sigma = 0) observes q exactly.
class OracleTranslator : public TranslatorBackend {
 public:
  explicit OracleTranslator(std::string id = "oracle") : id_(std::move(id)) {}
  TranslateResponse Translate(const TranslateRequest& request) override;
  std::string Endpoint() const override { return "mock://oracle-translator/" + id_; }

 private:
  std::string id_;
};

class OracleScorer : public ScorerBackend {
 public:
  explicit OracleScorer(double sigma) : sigma_(sigma) {}
  std::vector<double> Score(const std::string& model, std::span<const ScoreRequest> batch) override;
  std::string Endpoint() const override { return "mock://oracle-scorer"; }

 private:
  double sigma_;
};

// Latent quality embedded in an oracle candidate (0 if absent).
double OracleQuality(std::string_view text);

}  // namespace docrerank

#endif  // DOCRERANK_MOCK_BACKENDS_H_
