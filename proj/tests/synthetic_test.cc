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

#include <gtest/gtest.h>

#include <cmath>

#include "docrerank/synthetic.h"

namespace docrerank {
namespace {

TEST(Synthetic, NoiselessSelectionIsRunningMax) {
  SyntheticConfig cfg;
  cfg.documents = 500;
  cfg.sigma = 0.0;
  const SyntheticResult r = RunSyntheticSerial(cfg);
  ASSERT_EQ(r.mean_selected.size(), cfg.pool_sizes.size());
  for (size_t i = 0; i < cfg.pool_sizes.size(); ++i) {
    EXPECT_EQ(r.mean_selected[i], r.mean_running_max[i]);
    EXPECT_EQ(r.mismatches[i], 0u);
  }
}

TEST(Synthetic, NoisyCurveRisesBelowRunningMax) {
  SyntheticConfig cfg;
  cfg.sigma = 0.5;
  const SyntheticResult r = RunSyntheticSerial(cfg);
  for (size_t i = 1; i < cfg.pool_sizes.size(); ++i) {
    EXPECT_GE(r.mean_selected[i], r.mean_selected[i - 1] - 0.01);
    EXPECT_LE(r.mean_selected[i], r.mean_running_max[i]);
  }
  EXPECT_EQ(r.mismatches[0], 0u);
  EXPECT_GT(r.mismatches.back(), 0u);
  // E[max of 32 standard normals] is about 2.07.
  EXPECT_NEAR(r.mean_running_max.back(), 2.07, 0.1);
  EXPECT_NEAR(r.mean_selected[0], 0.0, 0.1);
}

TEST(Synthetic, ParallelMatchesSerial) {
  SyntheticConfig cfg;
  cfg.documents = 300;
  cfg.sigma = 0.5;
  cfg.seed = 3;
  const SyntheticResult a = RunSyntheticSerial(cfg);
  const SyntheticResult b = RunSynthetic(cfg, 4);
  EXPECT_EQ(a.mean_selected, b.mean_selected);
  EXPECT_EQ(a.mean_running_max, b.mean_running_max);
  EXPECT_EQ(a.mismatches, b.mismatches);
}

}  // namespace
}  // namespace docrerank
