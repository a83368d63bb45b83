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

#include "docrerank/qe_strategies.h"

#include <algorithm>
#include <string>

#include "docrerank/errors.h"

namespace docrerank {
namespace {

ScoreRequest MakeRequest(std::string src, std::string tgt, Language src_lang, Language tgt_lang,
                         double weight) {
  ScoreRequest req;
  req.approx_src_tokens = EstimateTokens(src, src_lang);
  req.approx_tgt_tokens = EstimateTokens(tgt, tgt_lang);
  req.src_text = std::move(src);
  req.tgt_text = std::move(tgt);
  req.weight = weight;
  return req;
}

AlignedPairs AlignDocuments(const Document& src, const Document& cand) {
  return AlignAndPad(Segment(src.text, src.language), Segment(cand.text, cand.language));
}

// Text for one side of [begin, end) of the aligned pairs. Padding entries
// repeat the final original sentence; within one window it is emitted once.
std::string SideText(const AlignedPairs& aligned, size_t begin, size_t end, bool source) {
  const size_t original = source ? aligned.src_original : aligned.tgt_original;
  const Language lang = source ? aligned.src_language : aligned.tgt_language;
  std::vector<std::string> parts;
  bool final_emitted = false;
  for (size_t i = begin; i < end; ++i) {
    const bool is_final = original == 0 || i + 1 >= original;
    if (is_final && final_emitted) continue;
    parts.push_back(source ? aligned.pairs[i].src : aligned.pairs[i].tgt);
    final_emitted = final_emitted || is_final;
  }
  return JoinSentences(parts, lang);
}

}  // namespace

double Aggregate(std::span<const double> scores, std::span<const double> weights) {
  if (scores.size() != weights.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(scores.size()) + " scores vs " +
                                                std::to_string(weights.size()) + " weights");
  }
  if (scores.empty()) throw Error(ErrorCode::kEmptyScores, "nothing to aggregate");
  double weighted = 0.0;
  double total = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!(weights[i] > 0.0)) {
      throw Error(ErrorCode::kInvalidConfig, "aggregation weights must be > 0");
    }
    weighted += weights[i] * scores[i];
    total += weights[i];
  }
  return weighted / total;
}

double ScorePlan::Aggregate(std::span<const double> scores) const {
  std::vector<double> weights;
  weights.reserve(requests.size());
  for (const ScoreRequest& req : requests) {
    weights.push_back(aggregation == Aggregation::kWeightedMean ? req.weight : 1.0);
  }
  return docrerank::Aggregate(scores, weights);
}

ScorePlan PlanFullDoc(const Document& src, const Document& cand) {
  const std::string_view src_text = Trim(src.text);
  const std::string_view cand_text = Trim(cand.text);
  if (src_text.empty() || cand_text.empty()) {
    throw Error(ErrorCode::kEmptyInput, "full-document scoring needs non-empty texts");
  }
  ScorePlan plan;
  plan.requests.push_back(MakeRequest(std::string(src_text), std::string(cand_text),
                                      src.language, cand.language, 1.0));
  return plan;
}

ScorePlan PlanSentenceAvg(const Document& src, const Document& cand) {
  const AlignedPairs aligned = AlignDocuments(src, cand);
  ScorePlan plan;
  plan.requests.reserve(aligned.size());
  for (const SentencePair& pair : aligned.pairs) {
    plan.requests.push_back(
        MakeRequest(pair.src, pair.tgt, aligned.src_language, aligned.tgt_language, 1.0));
  }
  return plan;
}

ScorePlan PlanDocContext(const Document& src, const Document& cand, int k) {
  if (k < 0) throw Error(ErrorCode::kInvalidConfig, "context size k must be >= 0");
  const AlignedPairs aligned = AlignDocuments(src, cand);
  ScorePlan plan;
  plan.requests.reserve(aligned.size());
  for (size_t i = 0; i < aligned.size(); ++i) {
    ScoreRequest req = MakeRequest(aligned.pairs[i].src, aligned.pairs[i].tgt,
                                   aligned.src_language, aligned.tgt_language, 1.0);
    const size_t first = i >= static_cast<size_t>(k) ? i - static_cast<size_t>(k) : 0;
    std::vector<std::string> src_ctx;
    std::vector<std::string> tgt_ctx;
    for (size_t j = first; j < i; ++j) {
      src_ctx.push_back(aligned.pairs[j].src);
      tgt_ctx.push_back(aligned.pairs[j].tgt);
    }
    req.src_context = JoinSentences(src_ctx, aligned.src_language);
    req.tgt_context = JoinSentences(tgt_ctx, aligned.tgt_language);
    req.approx_src_tokens += EstimateTokens(*req.src_context, aligned.src_language);
    req.approx_tgt_tokens += EstimateTokens(*req.tgt_context, aligned.tgt_language);
    req.mask_context = true;
    plan.requests.push_back(std::move(req));
  }
  return plan;
}

std::vector<Window> EnumerateWindows(size_t n, const SlideConfig& cfg) {
  if (cfg.w < 1 || cfg.s < 1) {
    throw Error(ErrorCode::kInvalidConfig, "window size and stride must be >= 1 (w=" +
                                               std::to_string(cfg.w) + ", s=" +
                                               std::to_string(cfg.s) + ")");
  }
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "cannot window an empty document");
  const size_t w = static_cast<size_t>(cfg.w);
  const size_t s = static_cast<size_t>(cfg.s);
  std::vector<Window> windows;
  for (size_t start = 0; start < n; start += s) {
    const size_t length = std::min(w, n - start);
    Window win{start, length, length < w};
    if (!windows.empty() && windows.back() == win) continue;
    windows.push_back(win);
    if (n <= w) break;
  }
  return windows;
}

ScorePlan PlanSlide(const Document& src, const Document& cand, const SlideConfig& cfg) {
  const AlignedPairs aligned = AlignDocuments(src, cand);
  const std::vector<Window> windows = EnumerateWindows(aligned.size(), cfg);
  ScorePlan plan;
  plan.aggregation = Aggregation::kWeightedMean;
  plan.requests.reserve(windows.size());
  for (const Window& win : windows) {
    const double weight = cfg.weighting == WindowWeighting::kSentenceCount
                              ? static_cast<double>(win.length)
                              : 1.0;
    if (win.start == 0 && win.length == aligned.size() && !Trim(src.text).empty() &&
        !Trim(cand.text).empty()) {
      ScorePlan whole = PlanFullDoc(src, cand);
      whole.requests.front().weight = weight;
      plan.requests.push_back(std::move(whole.requests.front()));
      continue;
    }
    const size_t end = win.start + win.length;
    plan.requests.push_back(MakeRequest(SideText(aligned, win.start, end, true),
                                        SideText(aligned, win.start, end, false),
                                        aligned.src_language, aligned.tgt_language, weight));
  }
  return plan;
}

}  // namespace docrerank
