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

#ifndef DOCRERANK_HTTP_BACKENDS_H_
#define DOCRERANK_HTTP_BACKENDS_H_

#include <string>

#include "docrerank/clients.h"

namespace docrerank {

// An HTTP/JSON endpoint. The bearer token, when configured, is read from
// the named environment variable at call time and never stored.
struct HttpEndpoint {
  std::string base_url;  // e.g. "http://127.0.0.1:8080"
  std::string path;      // e.g. "/v1/score"
  std::string credential_env;
  int timeout_seconds = 120;

  std::string Url() const { return base_url + path; }
};

// POSTs `body` and returns the parsed JSON response. Connection failures
// and 502/503/504 raise BackendUnreachable (retryable); other non-2xx
// statuses raise Error(kBackendError).
std::string PostJson(const HttpEndpoint& endpoint, const std::string& body);

// True when something answers HTTP at base_url (any status). `detail`
// receives the transport error otherwise.
bool ProbeEndpoint(const std::string& base_url, std::string* detail);

class HttpTranslatorBackend : public TranslatorBackend {
 public:
  HttpTranslatorBackend(HttpEndpoint endpoint, BackendCapabilities caps)
      : endpoint_(std::move(endpoint)), caps_(std::move(caps)) {}

  TranslateResponse Translate(const TranslateRequest& request) override;
  BackendCapabilities Capabilities() const override { return caps_; }
  std::string Endpoint() const override { return endpoint_.Url(); }

 private:
  HttpEndpoint endpoint_;
  BackendCapabilities caps_;
};

class HttpScorerBackend : public ScorerBackend {
 public:
  explicit HttpScorerBackend(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

  std::vector<double> Score(const std::string& model, std::span<const ScoreRequest> batch) override;
  std::string Endpoint() const override { return endpoint_.Url(); }

 private:
  HttpEndpoint endpoint_;
};

class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

  std::string Complete(const ChatRequest& request) override;
  std::string Endpoint() const override { return endpoint_.Url(); }

 private:
  HttpEndpoint endpoint_;
};

}  // namespace docrerank

#endif  // DOCRERANK_HTTP_BACKENDS_H_
