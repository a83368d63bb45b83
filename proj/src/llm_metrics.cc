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

#include "docrerank/llm_metrics.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

#include "docrerank/errors.h"
#include "docrerank/rng.h"
#include "prompt_data.h"

namespace docrerank {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<InContextExample> ParseExamples(const std::string& json_text) {
  const nlohmann::json doc = nlohmann::json::parse(json_text);
  std::vector<InContextExample> out;
  for (const auto& item : doc) {
    InContextExample ex;
    ex.source_lang = ParseLanguage(item.at("source_lang").get<std::string>());
    ex.target_lang = ParseLanguage(item.at("target_lang").get<std::string>());
    ex.source = item.at("source").get<std::string>();
    ex.translation = item.at("translation").get<std::string>();
    for (const auto& err : item.at("errors")) {
      ex.errors.push_back({err.at("severity").get<std::string>(),
                           err.at("description").get<std::string>()});
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string FormatErrors(const std::vector<ErrorItem>& errors) {
  if (errors.empty()) return "No errors.";
  std::string out;
  for (size_t i = 0; i < errors.size(); ++i) {
    if (i > 0) out += '\n';
    out += errors[i].severity + ": " + errors[i].description;
  }
  return out;
}

bool IsInteger(const std::string& token) {
  return !token.empty() && std::all_of(token.begin(), token.end(),
                                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::optional<int> InRange(const std::string& token) {
  if (!IsInteger(token) || token.size() > 3) return std::nullopt;
  const int value = std::stoi(token);
  if (value < 0 || value > 100) return std::nullopt;
  return value;
}

}  // namespace

const char* JudgeKindName(JudgeKind kind) {
  switch (kind) {
    case JudgeKind::kGembaDa: return "gemba_da";
    case JudgeKind::kEaPrompt: return "eaprompt";
    case JudgeKind::kEaPromptCritical: return "eaprompt_critical";
  }
  return "gemba_da";
}

JudgeConfig JudgeConfig::ForKind(JudgeKind kind) {
  JudgeConfig cfg;
  cfg.kind = kind;
  // DA replies are a bare number; error lists need room.
  cfg.max_output_tokens = kind == JudgeKind::kGembaDa ? 16 : 512;
  return cfg;
}

void JudgeConfig::Validate() const {
  if (max_attempts < 1) throw Error(ErrorCode::kInvalidConfig, "max_attempts must be >= 1");
  if (temperature_schedule.size() != static_cast<size_t>(max_attempts)) {
    throw Error(ErrorCode::kInvalidConfig, "temperature schedule needs one entry per attempt");
  }
  if (!std::is_sorted(temperature_schedule.begin(), temperature_schedule.end())) {
    throw Error(ErrorCode::kInvalidConfig, "temperature schedule must be non-decreasing");
  }
  if (temperature_schedule.front() < 0.0) {
    throw Error(ErrorCode::kInvalidConfig, "temperatures must be >= 0");
  }
  if (max_output_tokens < 1) throw Error(ErrorCode::kInvalidConfig, "max_output_tokens < 1");
}

const PromptSet& PromptSet::Default() {
  static const PromptSet kDefault = [] {
    PromptSet set;
    set.gemba_da = prompt_data::kGembaDa;
    set.eaprompt = prompt_data::kEaPrompt;
    set.eaprompt_critical = prompt_data::kEaPromptCritical;
    set.examples = ParseExamples(prompt_data::kEaPromptExamples);
    return set;
  }();
  return kDefault;
}

PromptSet PromptSet::FromDirectory(const std::string& dir) {
  PromptSet set;
  set.gemba_da = ReadFile(dir + "/gemba_da.v1.txt");
  set.eaprompt = ReadFile(dir + "/eaprompt.v1.txt");
  set.eaprompt_critical = ReadFile(dir + "/eaprompt_critical.v1.txt");
  try {
    set.examples = ParseExamples(ReadFile(dir + "/eaprompt_examples.v1.json"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("eaprompt examples: ") + e.what());
  }
  return set;
}

const InContextExample& PromptSet::ExampleFor(Language src, Language tgt) const {
  for (const InContextExample& ex : examples) {
    if (ex.source_lang == src && ex.target_lang == tgt) return ex;
  }
  throw Error(ErrorCode::kMissingExample, std::string("no in-context example for ") +
                                              LanguageCode(src) + "-" + LanguageCode(tgt));
}

std::string RenderTemplate(std::string_view tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size());
  size_t pos = 0;
  while (pos < tmpl.size()) {
    const size_t open = tmpl.find('{', pos);
    if (open == std::string_view::npos) break;
    const size_t close = tmpl.find('}', open + 1);
    if (close == std::string_view::npos) break;
    const std::string_view name = tmpl.substr(open + 1, close - open - 1);
    const bool is_placeholder =
        !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) {
          return std::islower(c) != 0 || c == '_';
        });
    if (!is_placeholder) {
      out.append(tmpl.substr(pos, open + 1 - pos));
      pos = open + 1;
      continue;
    }
    const auto it = vars.find(std::string(name));
    if (it == vars.end()) {
      throw Error(ErrorCode::kInvalidConfig, "template placeholder {" + std::string(name) +
                                                 "} is not bound");
    }
    out.append(tmpl.substr(pos, open - pos));
    out.append(it->second);
    pos = close + 1;
  }
  out.append(tmpl.substr(pos));
  return out;
}

std::string BuildGembaPrompt(std::string_view src, std::string_view cand, Language src_lang,
                             Language tgt_lang, const PromptSet& prompts) {
  if (Trim(src).empty() || Trim(cand).empty()) {
    throw Error(ErrorCode::kEmptyInput, "judge prompts need non-empty source and candidate");
  }
  return RenderTemplate(prompts.gemba_da, {{"source_lang", LanguageName(src_lang)},
                                           {"target_lang", LanguageName(tgt_lang)},
                                           {"source", std::string(src)},
                                           {"translation", std::string(cand)}});
}

std::string BuildEaPrompt(std::string_view src, std::string_view cand, Language src_lang,
                          Language tgt_lang, const InContextExample& example, bool critical,
                          const PromptSet& prompts) {
  if (example.source_lang != src_lang || example.target_lang != tgt_lang) {
    throw Error(ErrorCode::kMissingExample,
                std::string("in-context example is ") + LanguageCode(example.source_lang) + "-" +
                    LanguageCode(example.target_lang) + ", query is " + LanguageCode(src_lang) +
                    "-" + LanguageCode(tgt_lang));
  }
  if (Trim(src).empty() || Trim(cand).empty()) {
    throw Error(ErrorCode::kEmptyInput, "judge prompts need non-empty source and candidate");
  }
  return RenderTemplate(critical ? prompts.eaprompt_critical : prompts.eaprompt,
                        {{"source_lang", LanguageName(src_lang)},
                         {"target_lang", LanguageName(tgt_lang)},
                         {"example_source", example.source},
                         {"example_translation", example.translation},
                         {"example_errors", FormatErrors(example.errors)},
                         {"source", std::string(src)},
                         {"translation", std::string(cand)}});
}

std::optional<int> ParseDa(std::string_view reply) {
  static const std::regex kLabelled(R"(score\s*(?:is|[:=])?\s*(-?\d+(?:\.\d+)?))",
                                    std::regex::icase);
  static const std::regex kStandalone(R"((^|[^A-Za-z0-9_.\-])(-?\d+(?:\.\d+)?)(?![A-Za-z0-9_]))");

  const std::string text(reply);
  std::set<std::string> labelled;
  std::string first_labelled;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kLabelled);
       it != std::sregex_iterator(); ++it) {
    if (labelled.empty()) first_labelled = (*it)[1].str();
    labelled.insert((*it)[1].str());
  }
  if (labelled.size() > 1) return std::nullopt;
  if (!labelled.empty()) return InRange(first_labelled);

  std::smatch match;
  if (!std::regex_search(text, match, kStandalone)) return std::nullopt;
  return InRange(match[2].str());
}

ParsedErrors ParseErrors(std::string_view reply, bool critical_enabled) {
  static const std::regex kItem(
      R"(^\s*(?:(?:-|\*|•)\s*|\(?\d+[.)]\s*)?\[?(critical|major|minor)\]?\s*[:\-]\s*(.*)$)",
      std::regex::icase);
  ParsedErrors out;
  std::istringstream lines{std::string(reply)};
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch match;
    if (!std::regex_match(line, match, kItem)) continue;
    const std::string description = Lower(Trim(match[2].str()));
    if (description == "none" || description == "none." || description == "n/a") continue;
    const std::string severity = Lower(match[1].str());
    if (severity == "major") {
      ++out.major;
    } else if (severity == "minor") {
      ++out.minor;
    } else if (critical_enabled) {
      ++out.critical;
    }
  }
  return out;
}

double EaScore(const ParsedErrors& errors, bool critical_enabled) {
  const int critical = critical_enabled ? errors.critical : 0;
  return -(1.0 * errors.minor + 8.0 * errors.major + 100.0 * critical);
}

DocScore ScoreWithRetries(ChatBackend& backend, const std::string& prompt, const JudgeConfig& cfg,
                          uint64_t rng_seed, const std::string& metric_id) {
  cfg.Validate();
  const bool critical = cfg.kind == JudgeKind::kEaPromptCritical;
  std::string temperatures;
  std::string reply;
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    ChatRequest request;
    request.prompt = prompt;
    request.temperature = cfg.temperature_schedule[static_cast<size_t>(attempt)];
    request.max_output_tokens = cfg.max_output_tokens;
    request.seed = DeriveSeed(rng_seed, static_cast<uint64_t>(attempt));
    reply = WithRetries(cfg.transport_retry, [&] { return backend.Complete(request); });

    std::ostringstream t;
    t << request.temperature;
    temperatures += (attempt > 0 ? "," : "") + t.str();

    std::optional<double> value;
    if (cfg.kind == JudgeKind::kGembaDa) {
      if (auto da = ParseDa(reply)) value = *da;
    } else {
      value = EaScore(ParseErrors(reply, critical), critical);
    }
    if (value) {
      DocScore out = DocScore::Ok(*value, metric_id, attempt + 1);
      out.diagnostics["attempts"] = std::to_string(attempt + 1);
      out.diagnostics["temperatures"] = temperatures;
      out.diagnostics["reply"] = reply;
      return out;
    }
  }
  DocScore out = DocScore::Discarded(metric_id, cfg.max_attempts);
  out.diagnostics["attempts"] = std::to_string(cfg.max_attempts);
  out.diagnostics["temperatures"] = temperatures;
  out.diagnostics["reply"] = reply;
  return out;
}

}  // namespace docrerank
