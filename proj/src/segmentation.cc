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

#include "docrerank/segmentation.h"

#include <algorithm>

#include "docrerank/errors.h"

namespace docrerank {
namespace {

bool IsEnglishTerminator(char32_t cp) { return cp == '.' || cp == '!' || cp == '?'; }

bool IsClosingMark(char32_t cp) {
  switch (cp) {
    case '"': case '\'': case ')': case ']': case '}':
    case U'”': case U'’': case U'»':
      return true;
    default:
      return false;
  }
}

bool IsOpeningMark(char32_t cp) {
  switch (cp) {
    case '"': case '\'': case '(': case '[': case '{':
    case U'“': case U'‘': case U'«':
      return true;
    default:
      return false;
  }
}

bool IsJapaneseTerminator(char32_t cp) {
  return cp == U'。' || cp == U'！' || cp == U'？' || cp == '!' || cp == '?';
}

bool IsJapaneseCloser(char32_t cp) {
  return cp == U'」' || cp == U'』' || cp == U'）';
}

size_t SkipSpace(std::string_view text, size_t pos) {
  while (pos < text.size()) {
    const CodePoint cp = DecodeUtf8(text, pos);
    if (!IsSpace(cp.value)) break;
    pos += cp.length;
  }
  return pos;
}

// Builds a SegmentedDoc from the byte offsets at which sentences end. Cuts
// are positions right after a terminator run.
SegmentedDoc Assemble(std::string_view text, Language lang, const std::vector<size_t>& cuts) {
  SegmentedDoc doc;
  doc.language = lang;
  doc.raw_text = std::string(text);
  size_t pos = SkipSpace(text, 0);
  doc.leading_gap = std::string(text.substr(0, pos));

  auto emit = [&](size_t content_end) {
    const size_t gap_end = SkipSpace(text, content_end);
    Sentence s;
    s.text = std::string(text.substr(pos, content_end - pos));
    s.start = pos;
    s.end = content_end;
    s.trailing_gap = std::string(text.substr(content_end, gap_end - content_end));
    doc.sentences.push_back(std::move(s));
    pos = gap_end;
  };

  for (size_t cut : cuts) {
    if (cut <= pos) continue;
    emit(cut);
  }
  if (pos < text.size()) {
    const std::string_view rest = text.substr(pos);
    const size_t content_len = Trim(rest).size();
    // pos sits on a non-space code point, so Trim only strips the tail.
    emit(pos + content_len);
  }
  return doc;
}

// Token immediately preceding byte offset `end` (exclusive), back to the
// previous whitespace, with leading opening marks removed.
std::string_view TokenBefore(std::string_view text, size_t end) {
  size_t begin = end;
  while (begin > 0) {
    size_t prev = begin - 1;
    while (prev > 0 && (static_cast<unsigned char>(text[prev]) & 0xC0) == 0x80) --prev;
    if (IsSpace(DecodeUtf8(text, prev).value)) break;
    begin = prev;
  }
  while (begin < end) {
    const CodePoint cp = DecodeUtf8(text, begin);
    if (!IsOpeningMark(cp.value)) break;
    begin += cp.length;
  }
  return text.substr(begin, end - begin);
}

}  // namespace

const std::vector<std::string_view>& EnglishAbbreviations() {
  static const std::vector<std::string_view> kList = {
      "Dr.", "Mr.", "Mrs.", "Ms.", "Prof.", "St.", "etc.", "e.g.", "i.e.", "vs.", "U.S.", "No.",
  };
  return kList;
}

std::string SegmentedDoc::Reconstruct() const {
  std::string out = leading_gap;
  for (const Sentence& s : sentences) {
    out += s.text;
    out += s.trailing_gap;
  }
  return out;
}

std::vector<std::string> SegmentedDoc::Texts() const {
  std::vector<std::string> out;
  out.reserve(sentences.size());
  for (const Sentence& s : sentences) out.push_back(s.text);
  return out;
}

SegmentedDoc SegmentEnglish(std::string_view text) {
  std::vector<size_t> cuts;
  const auto& abbreviations = EnglishAbbreviations();
  size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = DecodeUtf8(text, pos);
    if (!IsEnglishTerminator(cp.value)) {
      pos += cp.length;
      continue;
    }
    const size_t run_start = pos;
    size_t run_end = pos;
    while (run_end < text.size() && IsEnglishTerminator(DecodeUtf8(text, run_end).value)) {
      run_end += DecodeUtf8(text, run_end).length;
    }
    const size_t terminators_end = run_end;
    while (run_end < text.size()) {
      const CodePoint closer = DecodeUtf8(text, run_end);
      if (!IsClosingMark(closer.value)) break;
      run_end += closer.length;
    }
    pos = run_end;

    const size_t next = SkipSpace(text, run_end);
    if (next == run_end || next >= text.size()) continue;
    const char32_t following = DecodeUtf8(text, next).value;
    const bool starts_sentence =
        (following >= 'A' && following <= 'Z') || IsOpeningMark(following);
    if (!starts_sentence) continue;

    if (terminators_end - run_start == 1 && text[run_start] == '.') {
      const std::string_view token = TokenBefore(text, terminators_end);
      if (std::find(abbreviations.begin(), abbreviations.end(), token) != abbreviations.end()) {
        continue;
      }
    }
    cuts.push_back(run_end);
  }
  return Assemble(text, Language::kEnglish, cuts);
}

SegmentedDoc SegmentJapanese(std::string_view text) {
  std::vector<size_t> cuts;
  size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = DecodeUtf8(text, pos);
    if (!IsJapaneseTerminator(cp.value)) {
      pos += cp.length;
      continue;
    }
    size_t end = pos;
    while (end < text.size() && IsJapaneseTerminator(DecodeUtf8(text, end).value)) {
      end += DecodeUtf8(text, end).length;
    }
    while (end < text.size() && IsJapaneseCloser(DecodeUtf8(text, end).value)) {
      end += DecodeUtf8(text, end).length;
    }
    cuts.push_back(end);
    pos = end;
  }
  return Assemble(text, Language::kJapanese, cuts);
}

SegmentedDoc Segment(std::string_view text, Language lang) {
  return lang == Language::kJapanese ? SegmentJapanese(text) : SegmentEnglish(text);
}

const char* PadSideName(PadSide side) {
  switch (side) {
    case PadSide::kNone: return "none";
    case PadSide::kSource: return "source";
    case PadSide::kTarget: return "target";
  }
  return "none";
}

AlignedPairs AlignAndPad(const SegmentedDoc& src, const SegmentedDoc& tgt) {
  const size_t m = src.size();
  const size_t n = tgt.size();
  if (m == 0 && n == 0) {
    throw Error(ErrorCode::kBothEmpty, "source and target both have zero sentences");
  }
  std::vector<std::string> src_texts = src.Texts();
  std::vector<std::string> tgt_texts = tgt.Texts();
  // An empty side counts as one empty sentence, which is then padded.
  if (src_texts.empty()) src_texts.emplace_back();
  if (tgt_texts.empty()) tgt_texts.emplace_back();

  AlignedPairs out;
  out.src_language = src.language;
  out.tgt_language = tgt.language;
  out.src_original = std::max<size_t>(m, 1);
  out.tgt_original = std::max<size_t>(n, 1);
  // pad_count counts every entry absent from the shorter side, including
  // the stand-in empty sentence, so that pad_count == |m - n| always.
  if (m > n) {
    out.pad_side = PadSide::kTarget;
    out.pad_count = m - n;
    out.tgt_original = n;
  } else if (n > m) {
    out.pad_side = PadSide::kSource;
    out.pad_count = n - m;
    out.src_original = m;
  }

  const size_t total = std::max(m, n);
  out.pairs.reserve(total);
  for (size_t i = 0; i < total; ++i) {
    SentencePair pair;
    pair.src = src_texts[std::min(i, src_texts.size() - 1)];
    pair.tgt = tgt_texts[std::min(i, tgt_texts.size() - 1)];
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

}  // namespace docrerank
