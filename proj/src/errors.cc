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

#include "docrerank/errors.h"

namespace docrerank {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kBothEmpty: return "BothEmpty";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyScores: return "EmptyScores";
    case ErrorCode::kMissingExample: return "MissingExample";
    case ErrorCode::kPoolTooSmall: return "PoolTooSmall";
    case ErrorCode::kNoValidCandidate: return "NoValidCandidate";
    case ErrorCode::kBackendUnreachable: return "BackendUnreachable";
    case ErrorCode::kBackendError: return "BackendError";
    case ErrorCode::kScoreCountMismatch: return "ScoreCountMismatch";
    case ErrorCode::kMissingReference: return "MissingReference";
    case ErrorCode::kUnsupportedLanguage: return "UnsupportedLanguage";
    case ErrorCode::kInvalidEdges: return "InvalidEdges";
    case ErrorCode::kMissingBaseline: return "MissingBaseline";
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kIoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace docrerank
