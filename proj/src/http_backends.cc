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

#include "docrerank/http_backends.h"

#include <cstdlib>

#include "httplib.h"
#include "docrerank/errors.h"
#include "docrerank/wire.h"

namespace docrerank {

std::string PostJson(const HttpEndpoint& endpoint, const std::string& body) {
  httplib::Client client(endpoint.base_url);
  if (!client.is_valid()) {
    throw Error(ErrorCode::kInvalidConfig, "invalid backend URL '" + endpoint.base_url + "'");
  }
  client.set_connection_timeout(10);
  client.set_read_timeout(endpoint.timeout_seconds);
  client.set_write_timeout(endpoint.timeout_seconds);
  httplib::Headers headers;
  if (!endpoint.credential_env.empty()) {
    if (const char* token = std::getenv(endpoint.credential_env.c_str())) {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }
  const httplib::Result res = client.Post(endpoint.path, headers, body, "application/json");
  if (!res) throw BackendUnreachable(endpoint.Url(), httplib::to_string(res.error()));
  if (res->status == 502 || res->status == 503 || res->status == 504) {
    throw BackendUnreachable(endpoint.Url(), "HTTP " + std::to_string(res->status));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::kBackendError,
                endpoint.Url() + " returned HTTP " + std::to_string(res->status) + ": " + res->body);
  }
  return res->body;
}

bool ProbeEndpoint(const std::string& base_url, std::string* detail) {
  httplib::Client client(base_url);
  if (!client.is_valid()) {
    if (detail) *detail = "invalid URL";
    return false;
  }
  client.set_connection_timeout(5);
  client.set_read_timeout(5);
  const httplib::Result res = client.Get("/");
  if (!res) {
    if (detail) *detail = httplib::to_string(res.error());
    return false;
  }
  return true;
}

namespace {

nlohmann::json ParseBody(const HttpEndpoint& endpoint, const std::string& body) {
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBackendError, endpoint.Url() + " sent invalid JSON: " + e.what());
  }
}

}  // namespace

TranslateResponse HttpTranslatorBackend::Translate(const TranslateRequest& request) {
  const std::string body = PostJson(endpoint_, wire::TranslateRequestToJson(request).dump());
  return wire::TranslateResponseFromJson(ParseBody(endpoint_, body));
}

std::vector<double> HttpScorerBackend::Score(const std::string& model,
                                             std::span<const ScoreRequest> batch) {
  if (batch.empty()) return {};
  const std::string body = PostJson(endpoint_, wire::ScoreRequestToJson(model, batch).dump());
  return wire::ScoresFromJson(ParseBody(endpoint_, body));
}

std::string HttpChatBackend::Complete(const ChatRequest& request) {
  const std::string body = PostJson(endpoint_, wire::ChatRequestToJson(request).dump());
  const nlohmann::json reply = ParseBody(endpoint_, body);
  if (!reply.contains("text") || !reply["text"].is_string()) {
    throw Error(ErrorCode::kBackendError, endpoint_.Url() + " reply has no text field");
  }
  return reply["text"].get<std::string>();
}

}  // namespace docrerank
