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

#ifndef DOCRERANK_SEGMENTATION_H_
#define DOCRERANK_SEGMENTATION_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "docrerank/text.h"

namespace docrerank {

// One sentence of a parent document. [start, end) is a byte span into the
// parent's raw text; trailing_gap is the whitespace that follows the
// sentence in the original text (possibly empty).
struct Sentence {
  std::string text;
  size_t start = 0;
  size_t end = 0;
  std::string trailing_gap;
};

struct SegmentedDoc {
  Language language = Language::kEnglish;
  std::string raw_text;
  // Whitespace before the first sentence (or the whole text when it holds
  // no sentence at all).
  std::string leading_gap;
  std::vector<Sentence> sentences;

  // leading_gap + sentence text + trailing gap ... == raw_text.
  std::string Reconstruct() const;
  std::vector<std::string> Texts() const;
  size_t size() const { return sentences.size(); }
};

// Rule-based English splitter: a run of . ! ? (plus closing quotes and
// brackets) ends a sentence when followed by whitespace and then an
// uppercase letter or an opening quote/bracket. A single period closing one
// of the known abbreviations never splits.
SegmentedDoc SegmentEnglish(std::string_view text);

// Splits after 。！？!? runs; trailing 」』） stay attached to the sentence
// they close. Unterminated trailing text forms a final sentence.
SegmentedDoc SegmentJapanese(std::string_view text);

SegmentedDoc Segment(std::string_view text, Language lang);

// The abbreviation list consulted by SegmentEnglish.
const std::vector<std::string_view>& EnglishAbbreviations();

enum class PadSide { kNone, kSource, kTarget };

const char* PadSideName(PadSide side);

struct SentencePair {
  std::string src;
  std::string tgt;
};

// Order-aligned sentence pairs. The shorter side is extended by repeating
// its final sentence; the last pad_count entries on pad_side are those
// repeats.
struct AlignedPairs {
  Language src_language = Language::kEnglish;
  Language tgt_language = Language::kJapanese;
  std::vector<SentencePair> pairs;
  PadSide pad_side = PadSide::kNone;
  size_t pad_count = 0;
  // Sentence counts before padding (0 for a side that had no sentence and
  // was stood in for by an empty one).
  size_t src_original = 0;
  size_t tgt_original = 0;

  size_t size() const { return pairs.size(); }
  bool IsSrcPadding(size_t i) const { return i >= src_original; }
  bool IsTgtPadding(size_t i) const { return i >= tgt_original; }
};

// Throws Error(kBothEmpty) when neither side has a sentence.
AlignedPairs AlignAndPad(const SegmentedDoc& src, const SegmentedDoc& tgt);

}  // namespace docrerank

#endif  // DOCRERANK_SEGMENTATION_H_
