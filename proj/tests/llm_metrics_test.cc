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

#include "docrerank/errors.h"
#include "docrerank/llm_metrics.h"
#include "docrerank/mock_backends.h"

namespace docrerank {
namespace {

bool Contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

TEST(GembaPrompt, EmbedsBothTextsAndScale) {
  const std::string p = BuildGembaPrompt("The cat sat.", "猫が座った。", Language::kEnglish, Language::kJapanese);
  EXPECT_TRUE(Contains(p, "The cat sat."));
  EXPECT_TRUE(Contains(p, "猫が座った。"));
  EXPECT_TRUE(Contains(p, "0 to 100"));
  EXPECT_TRUE(Contains(p, "English"));
  EXPECT_TRUE(Contains(p, "Japanese"));
  EXPECT_EQ(p, BuildGembaPrompt("The cat sat.", "猫が座った。", Language::kEnglish, Language::kJapanese));
}

TEST(GembaPrompt, LanguageSwapOnlyChangesNames) {
  const std::string a = BuildGembaPrompt("AAA", "BBB", Language::kEnglish, Language::kJapanese);
  const std::string b = BuildGembaPrompt("AAA", "BBB", Language::kJapanese, Language::kEnglish);
  // Put both renders into a language-neutral form and compare.
  auto neutral = [](std::string s) {
    for (const std::string name : {"English", "Japanese"}) {
      for (size_t pos; (pos = s.find(name)) != std::string::npos;) s.replace(pos, name.size(), "<L>");
    }
    return s;
  };
  EXPECT_NE(a, b);
  EXPECT_EQ(neutral(a), neutral(b));
}

TEST(EaPrompt, EmbedsPairSpecificExample) {
  const PromptSet& prompts = PromptSet::Default();
  const InContextExample& ex = prompts.ExampleFor(Language::kEnglish, Language::kJapanese);
  const std::string p = BuildEaPrompt("src text", "cand text", Language::kEnglish, Language::kJapanese, ex, false);
  EXPECT_TRUE(Contains(p, ex.source));
  EXPECT_TRUE(Contains(p, ex.translation));
  for (const ErrorItem& e : ex.errors) EXPECT_TRUE(Contains(p, e.description));
  EXPECT_LT(p.find(ex.source), p.find("src text"));
  EXPECT_FALSE(Contains(p, "critical"));
  const std::string c = BuildEaPrompt("src text", "cand text", Language::kEnglish, Language::kJapanese, ex, true);
  EXPECT_TRUE(Contains(c, "critical"));
  EXPECT_EQ(p, BuildEaPrompt("src text", "cand text", Language::kEnglish, Language::kJapanese, ex, false));

  const InContextExample& ja = prompts.ExampleFor(Language::kJapanese, Language::kEnglish);
  EXPECT_THROW(BuildEaPrompt("s", "c", Language::kEnglish, Language::kJapanese, ja, false), Error);
  PromptSet none = prompts;
  none.examples.clear();
  try {
    none.ExampleFor(Language::kEnglish, Language::kJapanese);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingExample);
  }
}

TEST(RenderTemplate, RequiresEveryPlaceholder) {
  EXPECT_EQ(RenderTemplate("{a}-{b}", {{"a", "1"}, {"b", "{a}"}}), "1-{a}");
  EXPECT_THROW(RenderTemplate("{a}-{b}", {{"a", "1"}}), Error);
}

TEST(ParseDa, Examples) {
  EXPECT_EQ(ParseDa("87"), 87);
  EXPECT_EQ(ParseDa("Score: 100"), 100);
  EXPECT_EQ(ParseDa("the translation is good"), std::nullopt);
  EXPECT_EQ(ParseDa("150"), std::nullopt);
  EXPECT_EQ(ParseDa("I would rate it 64 out of 100."), 64);
  EXPECT_EQ(ParseDa("Score: 70. Score: 80."), std::nullopt);
  EXPECT_EQ(ParseDa("Score: 70, final score: 70"), 70);
  EXPECT_EQ(ParseDa("-5"), std::nullopt);
  EXPECT_EQ(ParseDa("72.5"), std::nullopt);
  EXPECT_EQ(ParseDa("Score: 90 (the model v2 did well)"), 90);
}

TEST(ParseDa, RoundTripsEveryValue) {
  for (int v = 0; v <= 100; ++v) {
    EXPECT_EQ(ParseDa(std::to_string(v)), v);
    EXPECT_EQ(ParseDa("Score: " + std::to_string(v)), v);
    EXPECT_EQ(ParseDa(" " + std::to_string(v) + "\n"), v);
  }
}

TEST(ParseErrors, Examples) {
  const std::string reply =
      "Major: mistranslation of the verb\n"
      "- major: omitted clause\n"
      "minor: punctuation\n"
      "2. Minor: word order\n"
      "* minor: spelling\n";
  EXPECT_EQ(ParseErrors(reply, false), (ParsedErrors{2, 3, 0}));
  EXPECT_EQ(ParseErrors("No errors found.", false), (ParsedErrors{}));
  EXPECT_EQ(ParseErrors("critical: meaning reversed", true), (ParsedErrors{0, 0, 1}));
  EXPECT_EQ(ParseErrors("critical: meaning reversed", false), (ParsedErrors{}));
  EXPECT_EQ(ParseErrors("major: none", false), (ParsedErrors{}));
  // Severity words in running prose are not items.
  EXPECT_EQ(ParseErrors("There is a minor issue: tone.", false), (ParsedErrors{}));
}

TEST(EaScore, FullGrid) {
  for (int major = 0; major <= 5; ++major) {
    for (int minor = 0; minor <= 5; ++minor) {
      for (int critical = 0; critical <= 5; ++critical) {
        const ParsedErrors e{major, minor, critical};
        EXPECT_EQ(EaScore(e, false), -(minor + 8.0 * major));
        EXPECT_EQ(EaScore(e, true), -(minor + 8.0 * major + 100.0 * critical));
      }
    }
  }
  EXPECT_EQ(EaScore({0, 0, 1}, true) - EaScore({0, 0, 0}, true), -100.0);
}

JudgeConfig FastGemba() {
  JudgeConfig cfg = JudgeConfig::ForKind(JudgeKind::kGembaDa);
  cfg.transport_retry.initial_backoff = std::chrono::milliseconds(1);
  return cfg;
}

MockChat Scripted(int failures, const std::string& success) {
  MockChat::Options o;
  o.mode = MockChat::Mode::kScripted;
  for (int i = 0; i < failures; ++i) o.script.push_back("no idea");
  o.script.push_back(success);
  return MockChat(o);
}

TEST(ScoreWithRetries, FirstAttemptSucceeds) {
  MockChat chat = Scripted(0, "91");
  const DocScore s = ScoreWithRetries(chat, "p", FastGemba(), 1, "gemba-da");
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(*s.value, 91);
  EXPECT_EQ(s.diagnostics.at("attempts"), "1");
  EXPECT_EQ(chat.temperatures(), std::vector<double>{0.0});
}

TEST(ScoreWithRetries, SucceedsOnLastAttempt) {
  MockChat chat = Scripted(4, "73");
  const DocScore s = ScoreWithRetries(chat, "p", FastGemba(), 1, "gemba-da");
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(*s.value, 73);
  EXPECT_EQ(s.diagnostics.at("attempts"), "5");
  EXPECT_EQ(chat.temperatures(), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
}

TEST(ScoreWithRetries, FiveFailuresDiscard) {
  MockChat chat = Scripted(5, "73");
  const DocScore s = ScoreWithRetries(chat, "p", FastGemba(), 1, "gemba-da");
  EXPECT_FALSE(s.ok());
  EXPECT_FALSE(s.value.has_value());
  EXPECT_EQ(chat.calls(), 5);
}

TEST(ScoreWithRetries, TransportFailuresDoNotConsumeAttempts) {
  MockChat::Options o;
  o.mode = MockChat::Mode::kScripted;
  o.script = {"bad", "bad", "55"};
  o.unreachable_calls = 2;
  MockChat chat(o);
  const DocScore s = ScoreWithRetries(chat, "p", FastGemba(), 1, "gemba-da");
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(*s.value, 55);
  EXPECT_EQ(s.diagnostics.at("attempts"), "3");
}

TEST(ScoreWithRetries, EaPromptScoresErrorLists) {
  JudgeConfig cfg = JudgeConfig::ForKind(JudgeKind::kEaPromptCritical);
  MockChat chat = Scripted(0, "critical: wrong negation\nminor: comma");
  const DocScore s = ScoreWithRetries(chat, "p", cfg, 1, "eaprompt-critical");
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(*s.value, -101.0);
}

TEST(ScoreWithRetries, DeterministicForFixedSeed) {
  MockChat a, b;
  const std::string prompt = BuildGembaPrompt("x", "y", Language::kEnglish, Language::kJapanese);
  const DocScore sa = ScoreWithRetries(a, prompt, FastGemba(), 9);
  const DocScore sb = ScoreWithRetries(b, prompt, FastGemba(), 9);
  EXPECT_EQ(sa.value, sb.value);
}

TEST(JudgeConfig, Validation) {
  JudgeConfig cfg;
  cfg.temperature_schedule = {0.0, 0.5, 0.25, 0.75, 1.0};
  EXPECT_THROW(cfg.Validate(), Error);
  cfg.temperature_schedule = {0.0};
  EXPECT_THROW(cfg.Validate(), Error);
  EXPECT_NO_THROW(JudgeConfig().Validate());
}

}  // namespace
}  // namespace docrerank
