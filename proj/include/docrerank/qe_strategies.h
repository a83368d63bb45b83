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

#ifndef DOCRERANK_QE_STRATEGIES_H_
#define DOCRERANK_QE_STRATEGIES_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docrerank/segmentation.h"
#include "docrerank/text.h"

namespace docrerank {

struct Document {
  Language language = Language::kEnglish;
  std::string text;
};

// One call to a segment-level QE scorer.
struct ScoreRequest {
  std::string src_text;
  std::string tgt_text;
  std::optional<std::string> src_context;
  std::optional<std::string> tgt_context;
  // Score only src_text/tgt_text; the context is visible but masked out.
  bool mask_context = false;
  // Only set for reference-based evaluation requests.
  std::optional<std::string> reference;
  double weight = 1.0;
  // Heuristic token lengths, so that backend-side truncation (512-token
  // model caps) shows up in diagnostics.
  size_t approx_src_tokens = 0;
  size_t approx_tgt_tokens = 0;
};

enum class Aggregation { kMean, kWeightedMean };

struct ScorePlan {
  std::vector<ScoreRequest> requests;
  Aggregation aggregation = Aggregation::kMean;

  // Aggregates scores aligned with `requests`.
  double Aggregate(std::span<const double> scores) const;
};

struct Window {
  size_t start = 0;
  size_t length = 0;
  bool is_partial = false;

  bool operator==(const Window&) const = default;
};

enum class WindowWeighting { kSentenceCount, kUniform };

struct SlideConfig {
  int w = 7;
  int s = 7;
  WindowWeighting weighting = WindowWeighting::kSentenceCount;
};

enum class ScoreStatus { kOk, kDiscarded };

// Document-level metric value for one candidate.
struct DocScore {
  std::optional<double> value;  // engaged iff status == kOk
  std::string metric_id;
  int request_count = 0;
  ScoreStatus status = ScoreStatus::kDiscarded;
  std::map<std::string, std::string> diagnostics;

  bool ok() const { return status == ScoreStatus::kOk; }

  static DocScore Ok(double value, std::string metric_id, int request_count = 1) {
    DocScore out;
    out.value = value;
    out.metric_id = std::move(metric_id);
    out.request_count = request_count;
    out.status = ScoreStatus::kOk;
    return out;
  }
  static DocScore Discarded(std::string metric_id, int request_count = 1) {
    DocScore out;
    out.metric_id = std::move(metric_id);
    out.request_count = request_count;
    return out;
  }
};

// The whole document pair as a single request. Texts are passed with
// surrounding whitespace trimmed. Throws kEmptyInput.
ScorePlan PlanFullDoc(const Document& src, const Document& cand);

// One request per aligned (padded) sentence pair, plain mean.
ScorePlan PlanSentenceAvg(const Document& src, const Document& cand);

// Like PlanSentenceAvg, with up to k preceding aligned sentences of each
// side as masked context. Contexts are always present (empty at index 0).
ScorePlan PlanDocContext(const Document& src, const Document& cand, int k = 2);

// Window starts 0, s, 2s, ... while start < n, each clipped to the document
// end. Throws kInvalidConfig for w < 1 or s < 1 and kEmptyInput for n == 0.
std::vector<Window> EnumerateWindows(size_t n, const SlideConfig& cfg);

// One request per window over the aligned pairs. A window spanning the
// whole aligned sequence scores the two documents as written, so for
// n <= w this plan equals PlanFullDoc. Inside a window, padding repeats of a
// side's final sentence contribute that sentence only once.
ScorePlan PlanSlide(const Document& src, const Document& cand, const SlideConfig& cfg);

// Weighted arithmetic mean. Throws kLengthMismatch, kEmptyScores, or
// kInvalidConfig for a non-positive weight.
double Aggregate(std::span<const double> scores, std::span<const double> weights);

}  // namespace docrerank

#endif  // DOCRERANK_QE_STRATEGIES_H_
