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

#ifndef DOCRERANK_WIRE_H_
#define DOCRERANK_WIRE_H_

// JSON bodies of the backend contracts.
//
//   translator  request  {source_text, source_lang, target_lang,
//                         decoding: {strategy, p, epsilon, temperature,
//                                    groups, diversity, n}, max_tokens, seed}
//               response {candidates: [{text, finish_reason}]}
//   scorer      request  {pairs: [{src, tgt, src_context?, tgt_context?,
//                                  mask_context?, ref?}], model, batch}
//               response {scores: [real]}
//   chat        request  {prompt, temperature, max_output_tokens, seed}
//               response {text}

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "docrerank/clients.h"

namespace docrerank::wire {

nlohmann::json TranslateRequestToJson(const TranslateRequest& request);
TranslateRequest TranslateRequestFromJson(const nlohmann::json& body);
nlohmann::json TranslateResponseToJson(const TranslateResponse& response);
TranslateResponse TranslateResponseFromJson(const nlohmann::json& body);

nlohmann::json ScoreRequestToJson(const std::string& model, std::span<const ScoreRequest> batch);
std::vector<ScoreRequest> ScorePairsFromJson(const nlohmann::json& body);
std::vector<double> ScoresFromJson(const nlohmann::json& body);

nlohmann::json ChatRequestToJson(const ChatRequest& request);
ChatRequest ChatRequestFromJson(const nlohmann::json& body);

}  // namespace docrerank::wire

#endif  // DOCRERANK_WIRE_H_
