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

#ifndef DOCRERANK_TIMING_H_
#define DOCRERANK_TIMING_H_

#include <chrono>
#include <cstdint>

namespace docrerank {

// Mock backends can model latency instead of sleeping. They report it here,
// per calling thread; a StageTimer whose span saw any reported latency uses
// the modeled total instead of wall-clock time, which keeps mock runs
// byte-reproducible.
void ReportSimulatedLatency(double seconds);

// Timers nest in LIFO order. Each one zeroes the thread's modeled-latency
// accumulator on entry and folds its own total back into the enclosing span
// on exit, so modeled sums never depend on what the thread ran before.
class StageTimer {
 public:
  StageTimer();
  ~StageTimer();
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

  // Seconds since construction.
  double Elapsed() const;

 private:
  std::chrono::steady_clock::time_point start_;
  double saved_seconds_ = 0.0;
  uint64_t saved_touches_ = 0;
};

// Either sleeps or reports the modeled time, depending on `simulate`.
struct LatencyModel {
  double per_call_seconds = 0.0;
  double per_item_seconds = 0.0;
  bool simulate = true;

  void Apply(size_t items) const;
};

}  // namespace docrerank

#endif  // DOCRERANK_TIMING_H_
