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

#include "docrerank/mock_backends.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "docrerank/errors.h"
#include "docrerank/rng.h"
#include "docrerank/segmentation.h"

namespace docrerank {
namespace {

double UnitHash(uint64_t h) { return static_cast<double>(Mix64(h) >> 11) * 0x1.0p-53; }

std::vector<std::string> SplitWords(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream in(text);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::string JoinWords(const std::vector<std::string>& words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += words[i];
  }
  return out;
}

// Drops everything past `max_tokens` heuristic tokens.
std::string TruncateToBudget(const std::string& text, Language lang, int max_tokens) {
  std::string out;
  for (size_t pos = 0; pos < text.size();) {
    const CodePoint cp = DecodeUtf8(text, pos);
    std::string next = out + text.substr(pos, cp.length);
    if (static_cast<int>(EstimateTokens(next, lang)) > max_tokens) break;
    out = std::move(next);
    pos += cp.length;
  }
  return std::string(Trim(out));
}

std::string PerturbSentence(const std::string& sentence, SplitMix64& rng) {
  std::vector<std::string> words = SplitWords(sentence);
  if (words.size() > 2 && rng.NextDouble() < 0.35) {
    words.erase(words.begin() + static_cast<long>(rng.UniformIndex(words.size() - 1)));
  }
  if (words.size() > 2 && rng.NextDouble() < 0.25) {
    const size_t i = rng.UniformIndex(words.size() - 2);
    std::swap(words[i], words[i + 1]);
  }
  return JoinWords(words);
}

std::string EndWith(std::string sentence, Language lang) {
  while (!sentence.empty() && (sentence.back() == '.' || sentence.back() == '!' ||
                               sentence.back() == '?')) {
    sentence.pop_back();
  }
  return sentence + (lang == Language::kJapanese ? "。" : ".");
}

}  // namespace

TranslateResponse MockTranslator::Translate(const TranslateRequest& request) {
  calls_.fetch_add(1);
  if (failures_left_.fetch_sub(1) > 0) {
    throw BackendUnreachable(Endpoint(), "simulated connection refused");
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    log_.push_back(request);
  }
  const int n = std::max(0, request.decoding.num_candidates - options_.short_by);
  const SegmentedDoc source = Segment(request.source_text, request.source_lang);
  TranslateResponse response;
  for (int i = 0; i < n; ++i) {
    SplitMix64 rng(DeriveSeed(request.seed, options_.id, static_cast<uint64_t>(i)));
    std::vector<std::string> sentences;
    for (const Sentence& s : source.sentences) {
      const std::string out = EndWith(PerturbSentence(s.text, rng), request.target_lang);
      for (int r = 0; r < std::max(1, options_.verbosity); ++r) sentences.push_back(out);
    }
    TranslatedCandidate cand;
    cand.text = JoinSentences(sentences, request.target_lang);
    cand.finish_reason = "stop";
    if (request.max_tokens > 0 &&
        static_cast<int>(EstimateTokens(cand.text, request.target_lang)) > request.max_tokens) {
      cand.text = TruncateToBudget(cand.text, request.target_lang, request.max_tokens);
      cand.finish_reason = "length";
    }
    response.candidates.push_back(std::move(cand));
  }
  options_.latency.Apply(static_cast<size_t>(n));
  served_.fetch_add(n);
  return response;
}

BackendCapabilities MockTranslator::Capabilities() const {
  BackendCapabilities caps;
  caps.strategies = options_.strategies;
  caps.max_batch = options_.max_batch;
  return caps;
}

std::vector<TranslateRequest> MockTranslator::requests() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

double MockScore(const std::string& model, const ScoreRequest& request) {
  uint64_t h = HashString(model);
  h = CombineSeed(h, request.src_text);
  h = CombineSeed(h, request.tgt_text);
  if (request.src_context) h = CombineSeed(h, "src_ctx:" + *request.src_context);
  if (request.tgt_context) h = CombineSeed(h, "tgt_ctx:" + *request.tgt_context);
  if (request.reference) h = CombineSeed(h, "ref:" + *request.reference);
  return UnitHash(h);
}

std::vector<double> MockScorer::Score(const std::string& model,
                                      std::span<const ScoreRequest> batch) {
  calls_.fetch_add(1);
  {
    std::lock_guard<std::mutex> lock(mu_);
    batch_sizes_.push_back(batch.size());
  }
  std::vector<double> scores;
  scores.reserve(batch.size());
  for (const ScoreRequest& req : batch) scores.push_back(MockScore(model, req));
  if (options_.drop_last && !scores.empty()) scores.pop_back();
  options_.latency.Apply(batch.size());
  return scores;
}

std::vector<size_t> MockScorer::batch_sizes() const {
  std::lock_guard<std::mutex> lock(mu_);
  return batch_sizes_;
}

std::string MockChat::Complete(const ChatRequest& request) {
  int call_index = 0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
    if (unreachable_left_ > 0) {
      --unreachable_left_;
      throw BackendUnreachable(Endpoint(), "simulated timeout");
    }
    temperatures_.push_back(request.temperature);
    call_index = per_prompt_[HashString(request.prompt)]++;
  }
  options_.latency.Apply(1);

  switch (options_.mode) {
    case Mode::kAlwaysFail:
      return "I am unable to assess this translation.";
    case Mode::kScripted:
      if (options_.script.empty()) return "";
      return options_.script[std::min<size_t>(static_cast<size_t>(call_index),
                                              options_.script.size() - 1)];
    case Mode::kHash:
      break;
  }
  const uint64_t h = Mix64(HashString(request.prompt));
  if (request.prompt.find("Errors:") == std::string::npos) {
    return std::to_string(h % 101);
  }
  std::ostringstream reply;
  const int major = static_cast<int>((h >> 8) % 3);
  const int minor = static_cast<int>((h >> 16) % 4);
  const bool critical = request.prompt.find("critical") != std::string::npos &&
                        (h >> 24) % 8 == 0;
  if (critical) reply << "critical: the meaning is lost\n";
  for (int i = 0; i < major; ++i) reply << "major: mistranslation " << i + 1 << "\n";
  for (int i = 0; i < minor; ++i) reply << "minor: awkward phrasing " << i + 1 << "\n";
  if (!critical && major == 0 && minor == 0) reply << "No errors.";
  return reply.str();
}

std::vector<double> MockChat::temperatures() const {
  std::lock_guard<std::mutex> lock(mu_);
  return temperatures_;
}

int MockChat::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

TranslateResponse OracleTranslator::Translate(const TranslateRequest& request) {
  TranslateResponse response;
  for (int i = 0; i < request.decoding.num_candidates; ++i) {
    SplitMix64 rng(DeriveSeed(request.seed, id_, static_cast<uint64_t>(i)));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "[q=%.17g] ", rng.NextNormal());
    response.candidates.push_back({buf + request.source_text, "stop"});
  }
  return response;
}

double OracleQuality(std::string_view text) {
  const size_t open = text.find("[q=");
  if (open == std::string_view::npos) return 0.0;
  const size_t close = text.find(']', open);
  if (close == std::string_view::npos) return 0.0;
  return std::strtod(std::string(text.substr(open + 3, close - open - 3)).c_str(), nullptr);
}

std::vector<double> OracleScorer::Score(const std::string& model,
                                        std::span<const ScoreRequest> batch) {
  std::vector<double> scores;
  for (const ScoreRequest& req : batch) {
    double value = OracleQuality(req.tgt_text);
    if (sigma_ > 0.0) {
      SplitMix64 rng(CombineSeed(HashString(model), req.tgt_text));
      value += sigma_ * rng.NextNormal();
    }
    scores.push_back(value);
  }
  return scores;
}

}  // namespace docrerank
