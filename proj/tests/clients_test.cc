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

#include <gtest/gtest.h>

#include <cmath>

#include "docrerank/clients.h"
#include "docrerank/errors.h"
#include "docrerank/mock_backends.h"
#include "docrerank/timing.h"
#include "test_util.h"

namespace docrerank {
namespace {

// min(ceiling, ceil(L * am * mt / ms + aa)) evaluated in rationals.
int BudgetOracle(long l_in, long am, long mt, long ms, long aa, long ceiling) {
  const long num = l_in * am * mt + aa * ms;
  const long value = (num + ms - 1) / ms;
  return static_cast<int>(std::min(value, ceiling));
}

TEST(MaxTokens, SpecExamples) {
  const TokenBudget defaults;
  EXPECT_EQ(MaxTokens(100, defaults), 210);
  EXPECT_EQ(MaxTokens(0, defaults), 10);
  EXPECT_EQ(MaxTokens(5000, defaults), 2048);
}

TEST(MaxTokens, MatchesIntegerOracle) {
  for (long ms : {1, 2, 3, 7}) {
    for (long mt : {1, 2, 5}) {
      TokenBudget b;
      b.mu_src = static_cast<double>(ms);
      b.mu_tgt = static_cast<double>(mt);
      int prev = 0;
      for (long l = 0; l <= 3000; ++l) {
        const int got = MaxTokens(static_cast<size_t>(l), b);
        ASSERT_EQ(got, BudgetOracle(l, 2, mt, ms, 10, 2048)) << l << " " << mt << "/" << ms;
        ASSERT_GE(got, prev);
        prev = got;
      }
    }
  }
}

TEST(DecodingConfig, FactoriesAndValidation) {
  const DecodingConfig n = DecodingConfig::Nucleus(0.9, 0.6);
  EXPECT_EQ(n.strategy, DecodingStrategy::kNucleus);
  EXPECT_DOUBLE_EQ(n.p, 0.9);
  EXPECT_DOUBLE_EQ(n.temperature, 0.6);
  const DecodingConfig e = DecodingConfig::Epsilon(0.02, 0.5);
  EXPECT_DOUBLE_EQ(e.epsilon, 0.02);
  const DecodingConfig d = DecodingConfig::DiverseBeam(16, 0.5);
  EXPECT_EQ(d.groups, 16);
  EXPECT_DOUBLE_EQ(d.diversity, 0.5);
  EXPECT_THROW(DecodingConfig::Nucleus(1.5, 0.6).Validate(), Error);
  EXPECT_THROW(DecodingConfig::DiverseBeam(0, 0.5).Validate(), Error);
  EXPECT_EQ(ParseStrategy("epsilon"), DecodingStrategy::kEpsilon);
  EXPECT_THROW(ParseStrategy("greedy"), Error);
}

TEST(ValidateAgainstBackend, RejectsUnsupportedStrategy) {
  BackendCapabilities caps;
  caps.strategies = {DecodingStrategy::kNucleus};
  EXPECT_NO_THROW(ValidateAgainstBackend(DecodingConfig::Nucleus(0.9, 0.6), caps));
  EXPECT_THROW(ValidateAgainstBackend(DecodingConfig::Epsilon(0.02, 0.5), caps), Error);
}

const Document kSrc{Language::kEnglish, "The quick brown fox jumps over the dog. It ran away fast."};

TEST(GeneratePool, StableOrderAcrossReruns) {
  DecodingConfig cfg = DecodingConfig::Nucleus(0.9, 0.6);
  cfg.num_candidates = 32;
  MockTranslator a({}), b({});
  const CandidatePool pa = GeneratePool(a, kSrc, Language::kJapanese, cfg, {}, 7);
  const CandidatePool pb = GeneratePool(b, kSrc, Language::kJapanese, cfg, {}, 7);
  ASSERT_EQ(pa.size(), 32u);
  EXPECT_FALSE(pa.partial);
  for (size_t i = 0; i < 32; ++i) {
    EXPECT_EQ(pa.candidates[i].index, static_cast<int>(i));
    EXPECT_EQ(pa.candidates[i].text, pb.candidates[i].text);
    EXPECT_EQ(pa.candidates[i].decode_meta.at("strategy"), "nucleus");
  }
  cfg.num_candidates = 1;
  MockTranslator c({});
  EXPECT_EQ(GeneratePool(c, kSrc, Language::kJapanese, cfg, {}, 7).size(), 1u);
}

TEST(GeneratePool, ChunksByBackendBatchLimit) {
  MockTranslator::Options o;
  o.max_batch = 8;
  MockTranslator t(o);
  DecodingConfig cfg = DecodingConfig::Epsilon(0.02, 0.5);
  cfg.num_candidates = 20;
  const CandidatePool pool = GeneratePool(t, kSrc, Language::kJapanese, cfg, {}, 1);
  EXPECT_EQ(pool.size(), 20u);
  EXPECT_EQ(t.calls(), 3);
  const auto reqs = t.requests();
  EXPECT_EQ(reqs[0].decoding.num_candidates, 8);
  EXPECT_EQ(reqs[2].decoding.num_candidates, 4);
  EXPECT_NE(reqs[0].seed, reqs[1].seed);
}

TEST(GeneratePool, SendsAdaptiveBudget) {
  MockTranslator t({});
  DecodingConfig cfg = DecodingConfig::Nucleus(0.9, 0.6);
  TokenBudget budget;
  budget.mu_src = 2.0;
  budget.mu_tgt = 3.0;
  GeneratePool(t, kSrc, Language::kJapanese, cfg, budget, 1);
  const size_t l_in = EstimateTokens(kSrc.text, Language::kEnglish);
  EXPECT_EQ(t.requests()[0].max_tokens,
            BudgetOracle(static_cast<long>(l_in), 2, 3, 2, 10, 2048));
}

TEST(GeneratePool, FlagsTruncation) {
  MockTranslator::Options o;
  o.verbosity = 200;
  MockTranslator t(o);
  DecodingConfig cfg = DecodingConfig::Nucleus(0.9, 0.6);
  cfg.num_candidates = 2;
  const CandidatePool pool = GeneratePool(t, kSrc, Language::kEnglish, cfg, {}, 3);
  for (const Candidate& c : pool.candidates) {
    EXPECT_EQ(c.decode_meta.at("finish_reason"), "length");
    EXPECT_EQ(c.decode_meta.at("truncated"), "true");
    EXPECT_LE(EstimateTokens(c.text, Language::kEnglish),
              static_cast<size_t>(std::stoi(c.decode_meta.at("max_tokens"))));
  }
}

TEST(GeneratePool, ShortResponseMarksPartial) {
  MockTranslator::Options o;
  o.short_by = 3;
  MockTranslator t(o);
  DecodingConfig cfg = DecodingConfig::Nucleus(0.9, 0.6);
  cfg.num_candidates = 8;
  const CandidatePool pool = GeneratePool(t, kSrc, Language::kJapanese, cfg, {}, 3);
  EXPECT_EQ(pool.size(), 5u);
  EXPECT_TRUE(pool.partial);
  EXPECT_EQ(pool.requested, 8u);
}

TEST(GeneratePool, RetriesTransportFailures) {
  MockTranslator::Options o;
  o.unreachable_calls = 2;
  MockTranslator t(o);
  RetryPolicy retry;
  retry.initial_backoff = std::chrono::milliseconds(1);
  DecodingConfig cfg = DecodingConfig::Nucleus(0.9, 0.6);
  cfg.num_candidates = 4;
  EXPECT_EQ(GeneratePool(t, kSrc, Language::kJapanese, cfg, {}, 3, retry).size(), 4u);
  EXPECT_EQ(t.calls(), 3);

  MockTranslator::Options down;
  down.unreachable_calls = 100;
  MockTranslator dead(down);
  retry.max_retries = 2;
  EXPECT_THROW(GeneratePool(dead, kSrc, Language::kJapanese, cfg, {}, 3, retry), BackendUnreachable);
  EXPECT_EQ(dead.calls(), 3);
}

TEST(GeneratePool, LatencyIsSplitAcrossCandidates) {
  MockTranslator::Options o;
  o.latency = {0.0, 0.1, true};
  o.max_batch = 4;
  MockTranslator t(o);
  DecodingConfig cfg = DecodingConfig::Nucleus(0.9, 0.6);
  cfg.num_candidates = 6;
  const CandidatePool pool = GeneratePool(t, kSrc, Language::kJapanese, cfg, {}, 3);
  for (const Candidate& c : pool.candidates) EXPECT_NEAR(c.latency_seconds, 0.1, 1e-12);
}

std::vector<ScoreRequest> Requests(size_t n) {
  std::vector<ScoreRequest> out(n);
  for (size_t i = 0; i < n; ++i) {
    out[i].src_text = "src " + std::to_string(i);
    out[i].tgt_text = "tgt " + std::to_string(i);
  }
  return out;
}

TEST(ScoreRequests, BatchingRules) {
  MockScorer s;
  const auto r32 = Requests(32);
  EXPECT_EQ(ScoreRequests(s, "m", r32, 32).batch_sizes, std::vector<size_t>{32});

  MockScorer s2;
  const auto r33 = Requests(33);
  const ScoreResult res = ScoreRequests(s2, "m", r33, 32);
  EXPECT_EQ(res.batch_sizes, (std::vector<size_t>{32, 1}));
  ASSERT_EQ(res.scores.size(), 33u);
  for (size_t i = 0; i < 33; ++i) EXPECT_DOUBLE_EQ(res.scores[i], MockScore("m", r33[i]));

  MockScorer s3;
  const ScoreResult empty = ScoreRequests(s3, "m", {}, 32);
  EXPECT_TRUE(empty.scores.empty());
  EXPECT_EQ(s3.calls(), 0);
}

TEST(ScoreRequests, WrongLengthResponseFails) {
  MockScorer s({{}, true});
  const auto reqs = Requests(3);
  try {
    ScoreRequests(s, "m", reqs, 32);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kScoreCountMismatch);
  }
}

TEST(Timing, SimulatedLatencyNestsAndFoldsBack) {
  StageTimer outer;
  ReportSimulatedLatency(1.0);
  {
    StageTimer inner;
    ReportSimulatedLatency(0.25);
    EXPECT_DOUBLE_EQ(inner.Elapsed(), 0.25);
  }
  EXPECT_DOUBLE_EQ(outer.Elapsed(), 1.25);
}

}  // namespace
}  // namespace docrerank
