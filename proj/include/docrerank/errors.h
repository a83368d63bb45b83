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

#ifndef DOCRERANK_ERRORS_H_
#define DOCRERANK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace docrerank {

enum class ErrorCode {
  kEmptyInput,
  kBothEmpty,
  kInvalidConfig,
  kLengthMismatch,
  kEmptyScores,
  kMissingExample,
  kPoolTooSmall,
  kNoValidCandidate,
  kBackendUnreachable,
  kBackendError,
  kScoreCountMismatch,
  kMissingReference,
  kUnsupportedLanguage,
  kInvalidEdges,
  kMissingBaseline,
  kMalformedInput,
  kIoFailure,
};

const char* ErrorCodeName(ErrorCode code);

// Base class for every error raised by the library. The code lets callers
// (the CLI in particular) map failures onto exit statuses without string
// matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Transport-level failure talking to a backend. Carries the endpoint so that
// diagnostics can name it.
class BackendUnreachable : public Error {
 public:
  BackendUnreachable(std::string endpoint, const std::string& detail)
      : Error(ErrorCode::kBackendUnreachable, endpoint + " (" + detail + ")"),
        endpoint_(std::move(endpoint)) {}

  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
};

}  // namespace docrerank

#endif  // DOCRERANK_ERRORS_H_
