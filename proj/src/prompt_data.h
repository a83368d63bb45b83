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

#ifndef DOCRERANK_PROMPT_DATA_H_
#define DOCRERANK_PROMPT_DATA_H_

// Contents of prompts/*.v1.*, compiled in by cmake/EmbedPrompts.cmake.
namespace docrerank::prompt_data {

extern const char kGembaDa[];
extern const char kEaPrompt[];
extern const char kEaPromptCritical[];
extern const char kEaPromptExamples[];

}  // namespace docrerank::prompt_data

#endif  // DOCRERANK_PROMPT_DATA_H_
