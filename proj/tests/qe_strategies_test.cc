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

#include <set>

#include "docrerank/errors.h"
#include "docrerank/qe_strategies.h"
#include "docrerank/rng.h"
#include "test_util.h"

namespace docrerank {
namespace {

using testing::EnglishSentences;
using testing::JapaneseSentences;

Document En(size_t n, const std::string& tag = "s") {
  return {Language::kEnglish, JoinSentences(EnglishSentences(n, tag), Language::kEnglish)};
}
Document Ja(size_t n, const std::string& tag = "文") {
  return {Language::kJapanese, JoinSentences(JapaneseSentences(n, tag), Language::kJapanese)};
}

// Brute force: scan every position, keep multiples of s, clip to n.
std::vector<Window> WindowOracle(size_t n, size_t w, size_t s) {
  if (n <= w) return {Window{0, n, n < w}};
  std::vector<Window> out;
  for (size_t pos = 0; pos < n; ++pos) {
    if (pos % s != 0) continue;
    const size_t len = pos + w <= n ? w : n - pos;
    out.push_back({pos, len, len < w});
  }
  return out;
}

TEST(PlanFullDoc, SingleRequestOverTrimmedTexts) {
  const ScorePlan plan = PlanFullDoc({Language::kEnglish, "  A b. C d.\n"}, Ja(10));
  ASSERT_EQ(plan.requests.size(), 1u);
  EXPECT_EQ(plan.requests[0].src_text, "A b. C d.");
  EXPECT_DOUBLE_EQ(plan.requests[0].weight, 1.0);
  const double s = 0.37;
  EXPECT_DOUBLE_EQ(plan.Aggregate(std::span<const double>(&s, 1)), s);
  EXPECT_THROW(PlanFullDoc(En(1), {Language::kJapanese, "  "}), Error);
}

TEST(PlanSentenceAvg, OneRequestPerAlignedPair) {
  EXPECT_EQ(PlanSentenceAvg(En(3), Ja(3)).requests.size(), 3u);
  const ScorePlan padded = PlanSentenceAvg(En(3), Ja(2));
  ASSERT_EQ(padded.requests.size(), 3u);
  EXPECT_EQ(padded.requests[2].tgt_text, JapaneseSentences(2)[1]);
  const ScorePlan one = PlanSentenceAvg(En(1), Ja(1));
  const ScorePlan full = PlanFullDoc(En(1), Ja(1));
  EXPECT_EQ(one.requests[0].src_text, full.requests[0].src_text);
  EXPECT_EQ(one.requests[0].tgt_text, full.requests[0].tgt_text);
  EXPECT_EQ(one.aggregation, Aggregation::kMean);
}

TEST(PlanDocContext, PrecedingSentencesAsMaskedContext) {
  const ScorePlan plan = PlanDocContext(En(6), Ja(6), 2);
  ASSERT_EQ(plan.requests.size(), 6u);
  const auto src = EnglishSentences(6);
  const auto tgt = JapaneseSentences(6);
  EXPECT_EQ(*plan.requests[0].src_context, "");
  EXPECT_EQ(*plan.requests[0].tgt_context, "");
  EXPECT_TRUE(plan.requests[0].mask_context);
  EXPECT_EQ(*plan.requests[1].src_context, src[0]);
  EXPECT_EQ(*plan.requests[1].tgt_context, tgt[0]);
  EXPECT_EQ(*plan.requests[5].src_context, src[3] + " " + src[4]);
  EXPECT_EQ(*plan.requests[5].tgt_context, tgt[3] + tgt[4]);
  EXPECT_EQ(plan.requests[5].src_text, src[5]);
  for (const ScoreRequest& r : plan.requests) EXPECT_TRUE(r.mask_context);
}

TEST(EnumerateWindows, SpecExamples) {
  EXPECT_EQ(EnumerateWindows(14, {7, 7}), (std::vector<Window>{{0, 7, false}, {7, 7, false}}));
  EXPECT_EQ(EnumerateWindows(8, {7, 7}), (std::vector<Window>{{0, 7, false}, {7, 1, true}}));
  const std::vector<Window> n9 = EnumerateWindows(9, {7, 1});
  const std::vector<Window> expected = {{0, 7, false}, {1, 7, false}, {2, 7, false},
                                        {3, 6, true},  {4, 5, true},  {5, 4, true},
                                        {6, 3, true},  {7, 2, true},  {8, 1, true}};
  EXPECT_EQ(n9, expected);
  EXPECT_EQ(EnumerateWindows(5, {7, 7}), (std::vector<Window>{{0, 5, true}}));
}

TEST(EnumerateWindows, Errors) {
  EXPECT_THROW(EnumerateWindows(3, {0, 1}), Error);
  EXPECT_THROW(EnumerateWindows(3, {1, 0}), Error);
  EXPECT_THROW(EnumerateWindows(0, {7, 7}), Error);
}

TEST(EnumerateWindows, MatchesBruteForce) {
  for (size_t n = 1; n <= 40; ++n) {
    for (int w = 1; w <= 10; ++w) {
      for (int s = 1; s <= 10; ++s) {
        const auto got = EnumerateWindows(n, {w, s});
        ASSERT_EQ(got, WindowOracle(n, static_cast<size_t>(w), static_cast<size_t>(s)))
            << n << " " << w << " " << s;
        std::vector<int> cover(n, 0);
        for (const Window& win : got) {
          for (size_t i = win.start; i < win.start + win.length; ++i) ++cover[i];
        }
        if (s <= w) {
          for (int c : cover) ASSERT_GE(c, 1);
        }
        if (s == w) {
          for (int c : cover) ASSERT_EQ(c, 1);
        }
      }
    }
  }
}

TEST(PlanSlide, WeightsFollowWindowLengths) {
  const ScorePlan plan = PlanSlide(En(8), Ja(8), {7, 7});
  ASSERT_EQ(plan.requests.size(), 2u);
  EXPECT_DOUBLE_EQ(plan.requests[0].weight, 7.0);
  EXPECT_DOUBLE_EQ(plan.requests[1].weight, 1.0);
  EXPECT_EQ(plan.aggregation, Aggregation::kWeightedMean);
  const std::vector<double> scores = {0.9, 0.1};
  EXPECT_NEAR(plan.Aggregate(scores), (7 * 0.9 + 1 * 0.1) / 8, 1e-15);
  EXPECT_EQ(plan.requests[1].src_text, EnglishSentences(8)[7]);

  const std::vector<double> same = {0.42, 0.42};
  EXPECT_DOUBLE_EQ(plan.Aggregate(same), 0.42);

  const ScorePlan uniform = PlanSlide(En(8), Ja(8), {7, 7, WindowWeighting::kUniform});
  EXPECT_DOUBLE_EQ(uniform.requests[1].weight, 1.0);
  EXPECT_DOUBLE_EQ(uniform.requests[0].weight, 1.0);
}

TEST(PlanSlide, WindowTextsConcatenateAlignedSentences) {
  const ScorePlan plan = PlanSlide(En(9), Ja(9), {7, 1});
  const auto src = EnglishSentences(9);
  const auto tgt = JapaneseSentences(9);
  ASSERT_EQ(plan.requests.size(), 9u);
  for (size_t start = 0; start < 9; ++start) {
    const size_t end = std::min<size_t>(start + 7, 9);
    std::vector<std::string> s(src.begin() + start, src.begin() + end);
    std::vector<std::string> t(tgt.begin() + start, tgt.begin() + end);
    EXPECT_EQ(plan.requests[start].src_text, JoinSentences(s, Language::kEnglish));
    EXPECT_EQ(plan.requests[start].tgt_text, JoinSentences(t, Language::kJapanese));
    EXPECT_DOUBLE_EQ(plan.requests[start].weight, static_cast<double>(end - start));
  }
}

TEST(PlanSlide, EqualsFullDocWhenShorterThanWindow) {
  SplitMix64 rng(5);
  for (size_t m = 1; m <= 7; ++m) {
    for (size_t n = 0; n <= 7; ++n) {
      if (n == 0) continue;
      const Document src{Language::kEnglish, "  " + En(m).text + " \n"};
      const Document cand = Ja(n);
      const ScorePlan slide = PlanSlide(src, cand, {7, static_cast<int>(rng.UniformIndex(7) + 1)});
      const ScorePlan full = PlanFullDoc(src, cand);
      ASSERT_EQ(slide.requests.size(), 1u);
      EXPECT_EQ(slide.requests[0].src_text, full.requests[0].src_text);
      EXPECT_EQ(slide.requests[0].tgt_text, full.requests[0].tgt_text);
    }
  }
}

TEST(PlanSlide, PaddingRepeatsCollapseInsideAWindow) {
  // 9 source sentences, 2 target: target windows show its last sentence once.
  const ScorePlan plan = PlanSlide(En(9), Ja(2), {7, 7});
  const auto tgt = JapaneseSentences(2);
  ASSERT_EQ(plan.requests.size(), 2u);
  EXPECT_EQ(plan.requests[0].tgt_text, tgt[0] + tgt[1]);
  EXPECT_EQ(plan.requests[1].tgt_text, tgt[1]);
}

TEST(Aggregate, SpecExamples) {
  EXPECT_DOUBLE_EQ(Aggregate(std::vector<double>{0.5}, std::vector<double>{1}), 0.5);
  EXPECT_DOUBLE_EQ(Aggregate(std::vector<double>{1, 0}, std::vector<double>{1, 1}), 0.5);
  EXPECT_NEAR(Aggregate(std::vector<double>{0.9, 0.1}, std::vector<double>{7, 1}), 0.8, 1e-15);
  EXPECT_THROW(Aggregate(std::vector<double>{}, std::vector<double>{}), Error);
  EXPECT_THROW(Aggregate(std::vector<double>{1}, std::vector<double>{1, 2}), Error);
  EXPECT_THROW(Aggregate(std::vector<double>{1}, std::vector<double>{0}), Error);
}

TEST(Aggregate, MatchesLongDoubleOracle) {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 10000; ++trial) {
    const size_t n = rng.UniformIndex(50) + 1;
    std::vector<double> s(n), w(n);
    long double num = 0, den = 0;
    for (size_t i = 0; i < n; ++i) {
      s[i] = rng.NextDouble() * 200 - 100;
      w[i] = static_cast<double>(rng.UniformIndex(10) + 1);
      num += static_cast<long double>(s[i]) * w[i];
      den += w[i];
    }
    ASSERT_NEAR(Aggregate(s, w), static_cast<double>(num / den), 1e-12);
  }
}

}  // namespace
}  // namespace docrerank
