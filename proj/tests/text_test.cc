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

#include "docrerank/errors.h"
#include "docrerank/rng.h"
#include "docrerank/text.h"

namespace docrerank {
namespace {

TEST(Text, LanguageCodesRoundTrip) {
  EXPECT_EQ(ParseLanguage("en"), Language::kEnglish);
  EXPECT_EQ(ParseLanguage("ja"), Language::kJapanese);
  EXPECT_STREQ(LanguageCode(Language::kJapanese), "ja");
  EXPECT_STREQ(LanguageName(Language::kEnglish), "English");
  EXPECT_THROW(ParseLanguage("de"), Error);
}

TEST(Text, JoinUsesLanguageSeparator) {
  EXPECT_EQ(JoinSentences({"A.", "B."}, Language::kEnglish), "A. B.");
  EXPECT_EQ(JoinSentences({"あ。", "い。"}, Language::kJapanese), "あ。い。");
  EXPECT_EQ(JoinSentences({}, Language::kEnglish), "");
}

TEST(Text, Utf8Decoding) {
  const std::string s = "a\xE3\x80\x80\xF0\x9F\x98\x80";  // a, U+3000, U+1F600
  CodePoint a = DecodeUtf8(s, 0);
  EXPECT_EQ(a.value, U'a');
  CodePoint sp = DecodeUtf8(s, 1);
  EXPECT_EQ(sp.value, 0x3000u);
  EXPECT_EQ(sp.length, 3u);
  CodePoint emoji = DecodeUtf8(s, 4);
  EXPECT_EQ(emoji.value, 0x1F600u);
  EXPECT_EQ(emoji.length, 4u);
  CodePoint bad = DecodeUtf8("\xFF", 0);
  EXPECT_EQ(bad.value, 0xFFFDu);
  EXPECT_EQ(bad.length, 1u);
}

TEST(Text, CountsAndTrim) {
  EXPECT_EQ(CountWords("  two   words\n"), 2u);
  EXPECT_EQ(CountWords(""), 0u);
  EXPECT_EQ(CountNonSpaceCodePoints("日本 語\xE3\x80\x80!"), 4u);
  EXPECT_EQ(Trim("\t x y \n"), "x y");
  EXPECT_EQ(Trim("   "), "");
}

TEST(Text, TokenEstimateMatchesHeuristic) {
  // Oracle: ceil(words * 1.3) / ceil(chars * 0.7), computed in integers.
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t words = rng.UniformIndex(60) + 1;
    std::string en;
    for (size_t i = 0; i < words; ++i) en += (i ? " w" : "w") + std::to_string(i);
    EXPECT_EQ(EstimateTokens(en, Language::kEnglish), (words * 13 + 9) / 10) << words;

    const size_t chars = rng.UniformIndex(80) + 1;
    std::string ja;
    for (size_t i = 0; i < chars; ++i) ja += "語";
    EXPECT_EQ(EstimateTokens(ja, Language::kJapanese), (chars * 7 + 9) / 10) << chars;
  }
  EXPECT_EQ(EstimateTokens("", Language::kEnglish), 0u);
  EXPECT_EQ(EstimateTokens("word", Language::kEnglish), 2u);
}

TEST(Rng, DeterministicAndInRange) {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Next(), b.Next());
  SplitMix64 r(1);
  std::vector<int> hist(5, 0);
  for (int i = 0; i < 50000; ++i) {
    const double d = r.NextDouble();
    ASSERT_GE(d, 0.0);
    ASSERT_LT(d, 1.0);
    ++hist[r.UniformIndex(5)];
  }
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}

TEST(Rng, NormalMoments) {
  SplitMix64 r(3);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.NextNormal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Rng, SeedDerivationSeparatesComponents) {
  EXPECT_NE(DeriveSeed(1, "a", "b"), DeriveSeed(1, "b", "a"));
  EXPECT_NE(DeriveSeed(1, "ab"), DeriveSeed(1, "a", "b"));
  EXPECT_EQ(DeriveSeed(9, "doc", uint64_t{4}), DeriveSeed(9, "doc", uint64_t{4}));
  // FNV-1a reference values.
  EXPECT_EQ(HashString(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(HashString("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace docrerank
