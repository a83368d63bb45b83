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

#include "docrerank/wire.h"

#include "docrerank/errors.h"

namespace docrerank::wire {
namespace {

using nlohmann::json;

// Rethrows json access errors as malformed-input errors.
template <typename Fn>
auto Guard(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string(what) + ": " + e.what());
  }
}

}  // namespace

json TranslateRequestToJson(const TranslateRequest& request) {
  const DecodingConfig& d = request.decoding;
  json decoding = {{"strategy", StrategyName(d.strategy)},
                   {"temperature", d.temperature},
                   {"n", d.num_candidates}};
  switch (d.strategy) {
    case DecodingStrategy::kNucleus:
      decoding["p"] = d.p;
      break;
    case DecodingStrategy::kEpsilon:
      decoding["epsilon"] = d.epsilon;
      break;
    case DecodingStrategy::kDiverseBeam:
      decoding["groups"] = d.groups;
      decoding["diversity"] = d.diversity;
      break;
  }
  return {{"source_text", request.source_text},
          {"source_lang", LanguageCode(request.source_lang)},
          {"target_lang", LanguageCode(request.target_lang)},
          {"decoding", decoding},
          {"max_tokens", request.max_tokens},
          {"seed", request.seed}};
}

TranslateRequest TranslateRequestFromJson(const json& body) {
  return Guard("translate request", [&] {
    TranslateRequest r;
    r.source_text = body.at("source_text").get<std::string>();
    r.source_lang = ParseLanguage(body.at("source_lang").get<std::string>());
    r.target_lang = ParseLanguage(body.at("target_lang").get<std::string>());
    const json& d = body.at("decoding");
    r.decoding.strategy = ParseStrategy(d.at("strategy").get<std::string>());
    r.decoding.temperature = d.value("temperature", r.decoding.temperature);
    r.decoding.p = d.value("p", r.decoding.p);
    r.decoding.epsilon = d.value("epsilon", r.decoding.epsilon);
    r.decoding.groups = d.value("groups", r.decoding.groups);
    r.decoding.diversity = d.value("diversity", r.decoding.diversity);
    r.decoding.num_candidates = d.at("n").get<int>();
    r.max_tokens = body.at("max_tokens").get<int>();
    r.seed = body.value("seed", uint64_t{0});
    return r;
  });
}

json TranslateResponseToJson(const TranslateResponse& response) {
  json candidates = json::array();
  for (const TranslatedCandidate& c : response.candidates) {
    candidates.push_back({{"text", c.text}, {"finish_reason", c.finish_reason}});
  }
  return {{"candidates", candidates}};
}

TranslateResponse TranslateResponseFromJson(const json& body) {
  return Guard("translate response", [&] {
    TranslateResponse r;
    for (const json& c : body.at("candidates")) {
      r.candidates.push_back(
          {c.at("text").get<std::string>(), c.value("finish_reason", std::string("stop"))});
    }
    return r;
  });
}

json ScoreRequestToJson(const std::string& model, std::span<const ScoreRequest> batch) {
  json pairs = json::array();
  for (const ScoreRequest& req : batch) {
    json pair = {{"src", req.src_text}, {"tgt", req.tgt_text}};
    if (req.src_context) pair["src_context"] = *req.src_context;
    if (req.tgt_context) pair["tgt_context"] = *req.tgt_context;
    if (req.mask_context) pair["mask_context"] = true;
    if (req.reference) pair["ref"] = *req.reference;
    pairs.push_back(std::move(pair));
  }
  return {{"pairs", pairs}, {"model", model}, {"batch", batch.size()}};
}

std::vector<ScoreRequest> ScorePairsFromJson(const json& body) {
  return Guard("score request", [&] {
    std::vector<ScoreRequest> out;
    for (const json& p : body.at("pairs")) {
      ScoreRequest req;
      req.src_text = p.at("src").get<std::string>();
      req.tgt_text = p.at("tgt").get<std::string>();
      if (p.contains("src_context")) req.src_context = p["src_context"].get<std::string>();
      if (p.contains("tgt_context")) req.tgt_context = p["tgt_context"].get<std::string>();
      req.mask_context = p.value("mask_context", false);
      if (p.contains("ref")) req.reference = p["ref"].get<std::string>();
      out.push_back(std::move(req));
    }
    return out;
  });
}

std::vector<double> ScoresFromJson(const json& body) {
  return Guard("score response", [&] { return body.at("scores").get<std::vector<double>>(); });
}

json ChatRequestToJson(const ChatRequest& request) {
  return {{"prompt", request.prompt},
          {"temperature", request.temperature},
          {"max_output_tokens", request.max_output_tokens},
          {"seed", request.seed}};
}

ChatRequest ChatRequestFromJson(const json& body) {
  return Guard("chat request", [&] {
    ChatRequest r;
    r.prompt = body.at("prompt").get<std::string>();
    r.temperature = body.at("temperature").get<double>();
    r.max_output_tokens = body.at("max_output_tokens").get<int>();
    r.seed = body.value("seed", uint64_t{0});
    return r;
  });
}

}  // namespace docrerank::wire
