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

#ifndef DOCRERANK_LLM_METRICS_H_
#define DOCRERANK_LLM_METRICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docrerank/clients.h"
#include "docrerank/qe_strategies.h"
#include "docrerank/text.h"

namespace docrerank {

enum class JudgeKind { kGembaDa, kEaPrompt, kEaPromptCritical };

const char* JudgeKindName(JudgeKind kind);

struct JudgeConfig {
  JudgeKind kind = JudgeKind::kGembaDa;
  int max_attempts = 5;
  // One temperature per attempt, non-decreasing.
  std::vector<double> temperature_schedule = {0.0, 0.25, 0.5, 0.75, 1.0};
  int max_output_tokens = 16;
  RetryPolicy transport_retry;

  static JudgeConfig ForKind(JudgeKind kind);
  void Validate() const;
};

struct ErrorItem {
  std::string severity;  // "critical", "major" or "minor"
  std::string description;
};

// Worked one-shot example for a language pair.
struct InContextExample {
  Language source_lang = Language::kEnglish;
  Language target_lang = Language::kJapanese;
  std::string source;
  std::string translation;
  std::vector<ErrorItem> errors;
};

// Prompt templates with {named} placeholders, plus the one-shot examples.
// Default() returns the versioned files under prompts/ compiled into the
// library; FromDirectory loads replacements with the same file names.
struct PromptSet {
  std::string gemba_da;
  std::string eaprompt;
  std::string eaprompt_critical;
  std::vector<InContextExample> examples;

  static const PromptSet& Default();
  static PromptSet FromDirectory(const std::string& dir);

  // Throws kMissingExample.
  const InContextExample& ExampleFor(Language src, Language tgt) const;
};

// Substitutes {name} placeholders in one pass. Every placeholder in the
// template must be bound (kInvalidConfig otherwise).
std::string RenderTemplate(std::string_view tmpl, const std::map<std::string, std::string>& vars);

std::string BuildGembaPrompt(std::string_view src, std::string_view cand, Language src_lang,
                             Language tgt_lang, const PromptSet& prompts = PromptSet::Default());

std::string BuildEaPrompt(std::string_view src, std::string_view cand, Language src_lang,
                          Language tgt_lang, const InContextExample& example, bool critical,
                          const PromptSet& prompts = PromptSet::Default());

// First standalone integer in [0, 100]; a "Score:"-labelled value takes
// precedence. Returns nullopt (a parse failure) when there is no number,
// the number is out of range or fractional, or labelled scores disagree.
std::optional<int> ParseDa(std::string_view reply);

struct ParsedErrors {
  int major = 0;
  int minor = 0;
  int critical = 0;

  bool operator==(const ParsedErrors&) const = default;
};

// Counts lines of the form "<severity>: <description>" (optionally bulleted
// or numbered). Critical lines are ignored unless critical_enabled. A reply
// without such lines parses as no errors.
ParsedErrors ParseErrors(std::string_view reply, bool critical_enabled);

// -(minor + 8 major + 100 critical); the critical term only when enabled.
double EaScore(const ParsedErrors& errors, bool critical_enabled);

// Sends the prompt up to cfg.max_attempts times, attempt i at
// temperature_schedule[i], until the reply parses. Transport failures are
// retried with backoff without consuming attempts. Diagnostics record
// each attempt's temperature plus the last raw reply.
DocScore ScoreWithRetries(ChatBackend& backend, const std::string& prompt, const JudgeConfig& cfg,
                          uint64_t rng_seed, const std::string& metric_id = "");

}  // namespace docrerank

#endif  // DOCRERANK_LLM_METRICS_H_
