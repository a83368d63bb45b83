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

#ifndef DOCRERANK_CLIENTS_INL_H_
#define DOCRERANK_CLIENTS_INL_H_

#include <thread>

#include "docrerank/errors.h"

namespace docrerank {

template <typename Fn>
auto WithRetries(const RetryPolicy& policy, Fn&& call) -> decltype(call()) {
  auto backoff = std::chrono::duration<double, std::milli>(policy.initial_backoff);
  for (int attempt = 0;; ++attempt) {
    try {
      return call();
    } catch (const BackendUnreachable&) {
      if (attempt >= policy.max_retries) throw;
    }
    if (backoff.count() > 0) std::this_thread::sleep_for(backoff);
    backoff *= policy.multiplier;
  }
}

}  // namespace docrerank

#endif  // DOCRERANK_CLIENTS_INL_H_
