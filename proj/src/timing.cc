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

#include "docrerank/timing.h"

#include <thread>

namespace docrerank {
namespace {

struct SimulatedClock {
  double seconds = 0.0;
  uint64_t touches = 0;
};

thread_local SimulatedClock g_simulated;

}  // namespace

void ReportSimulatedLatency(double seconds) {
  g_simulated.seconds += seconds;
  ++g_simulated.touches;
}

StageTimer::StageTimer()
    : start_(std::chrono::steady_clock::now()),
      saved_seconds_(g_simulated.seconds),
      saved_touches_(g_simulated.touches) {
  g_simulated = SimulatedClock{};
}

StageTimer::~StageTimer() {
  g_simulated.seconds = saved_seconds_ + g_simulated.seconds;
  g_simulated.touches = saved_touches_ + g_simulated.touches;
}

double StageTimer::Elapsed() const {
  if (g_simulated.touches != 0) return g_simulated.seconds;
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void LatencyModel::Apply(size_t items) const {
  const double seconds = per_call_seconds + per_item_seconds * static_cast<double>(items);
  if (simulate) {
    ReportSimulatedLatency(seconds);
  } else if (seconds > 0.0) {
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
  }
}

}  // namespace docrerank
