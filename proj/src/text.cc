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

#include "docrerank/text.h"

#include "docrerank/errors.h"

#include <cmath>

namespace docrerank {

Language ParseLanguage(std::string_view code) {
  if (code == "en") return Language::kEnglish;
  if (code == "ja") return Language::kJapanese;
  throw Error(ErrorCode::kUnsupportedLanguage, "unsupported language code '" + std::string(code) + "'");
}

const char* LanguageCode(Language lang) {
  return lang == Language::kJapanese ? "ja" : "en";
}

const char* LanguageName(Language lang) {
  return lang == Language::kJapanese ? "Japanese" : "English";
}

std::string JoinSentences(const std::vector<std::string>& sentences, Language lang) {
  const std::string_view joiner = SentenceJoiner(lang);
  std::string out;
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (i > 0) out.append(joiner);
    out.append(sentences[i]);
  }
  return out;
}

CodePoint DecodeUtf8(std::string_view text, size_t pos) {
  const auto byte = [&](size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) return {lead, 1};
  size_t len = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    return {0xFFFD, 1};
  }
  if (pos + len > text.size()) return {0xFFFD, 1};
  for (size_t i = 1; i < len; ++i) {
    const unsigned char cont = byte(pos + i);
    if ((cont & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (cont & 0x3F);
  }
  return {cp, len};
}

bool IsSpace(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v' ||
         cp == 0x3000;
}

size_t CountNonSpaceCodePoints(std::string_view text) {
  size_t count = 0;
  for (size_t pos = 0; pos < text.size();) {
    const CodePoint cp = DecodeUtf8(text, pos);
    if (!IsSpace(cp.value)) ++count;
    pos += cp.length;
  }
  return count;
}

size_t CountWords(std::string_view text) {
  size_t count = 0;
  bool in_word = false;
  for (size_t pos = 0; pos < text.size();) {
    const CodePoint cp = DecodeUtf8(text, pos);
    if (IsSpace(cp.value)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
    pos += cp.length;
  }
  return count;
}

std::string_view Trim(std::string_view text) {
  size_t begin = 0;
  while (begin < text.size()) {
    const CodePoint cp = DecodeUtf8(text, begin);
    if (!IsSpace(cp.value)) break;
    begin += cp.length;
  }
  size_t end = text.size();
  while (end > begin) {
    // Step back to the start of the previous code point.
    size_t start = end - 1;
    while (start > begin && (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80) --start;
    const CodePoint cp = DecodeUtf8(text, start);
    if (!IsSpace(cp.value)) break;
    end = start;
  }
  return text.substr(begin, end - begin);
}

size_t EstimateTokens(std::string_view text, Language lang) {
  const double units = lang == Language::kJapanese
                           ? static_cast<double>(CountNonSpaceCodePoints(text)) * 0.7
                           : static_cast<double>(CountWords(text)) * 1.3;
  // Round away representation noise before the ceiling (e.g. 10 * 0.7).
  return static_cast<size_t>(std::ceil(units - 1e-9));
}

}  // namespace docrerank
