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

#ifndef DOCRERANK_TEXT_H_
#define DOCRERANK_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace docrerank {

enum class Language { kEnglish, kJapanese };

// "en" / "ja". Throws Error(kUnsupportedLanguage) otherwise.
Language ParseLanguage(std::string_view code);
const char* LanguageCode(Language lang);
const char* LanguageName(Language lang);

// Separator used whenever sentences are re-joined into running text.
inline std::string_view SentenceJoiner(Language lang) {
  return lang == Language::kJapanese ? std::string_view() : std::string_view(" ");
}

std::string JoinSentences(const std::vector<std::string>& sentences, Language lang);

struct CodePoint {
  char32_t value = 0;
  size_t length = 0;  // bytes consumed; invalid bytes decode as U+FFFD, length 1
};

CodePoint DecodeUtf8(std::string_view text, size_t pos);

// ASCII whitespace or U+3000 (ideographic space).
bool IsSpace(char32_t cp);

// Number of code points that are not whitespace.
size_t CountNonSpaceCodePoints(std::string_view text);

// Whitespace-delimited word count.
size_t CountWords(std::string_view text);

std::string_view Trim(std::string_view text);

// Heuristic subword-token estimate used when no model tokenizer is
// available: ceil(words * 1.3) for English, ceil(non-space chars * 0.7) for
// Japanese. Non-empty text always yields at least 1.
size_t EstimateTokens(std::string_view text, Language lang);

}  // namespace docrerank

#endif  // DOCRERANK_TEXT_H_
