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

#include <benchmark/benchmark.h>

#include <memory>

#include "docrerank/harness.h"
#include "docrerank/mock_backends.h"
#include "docrerank/synthetic.h"

namespace docrerank {
namespace {

struct Grid {
  std::vector<ExperimentDoc> corpus;
  std::vector<TranslatorSpec> translators;
  std::vector<MetricSpec> metrics;
  GridOptions options;
};

Grid MakeGrid() {
  Grid g;
  for (int i = 0; i < 24; ++i) {
    std::string text;
    for (int s = 0; s <= i % 12; ++s) text += "Sentence " + std::to_string(s) + " of document " + std::to_string(i) + ". ";
    g.corpus.push_back(MakeExperimentDoc("doc" + std::to_string(i), Granularity::kFullDocument,
                                         Language::kEnglish, Language::kJapanese, text, "参照。"));
  }
  TranslatorSpec t;
  t.id = "mock";
  t.backend = std::make_shared<MockTranslator>(MockTranslator::Options{});
  g.translators = {t};
  auto scorer = std::make_shared<MockScorer>();
  for (auto [id, strategy] : {std::pair{"full", MetricStrategy::kFullDoc}, std::pair{"slide", MetricStrategy::kSlide},
                              std::pair{"ctx", MetricStrategy::kDocContext}}) {
    MetricSpec m;
    m.id = id;
    m.model = id;
    m.strategy = strategy;
    m.slide = {7, 1};
    m.scorer = scorer;
    g.metrics.push_back(m);
  }
  g.options.pool_sizes = {1, 2, 4, 8, 16, 32};
  return g;
}

void BM_GridSerial(benchmark::State& state) {
  const Grid g = MakeGrid();
  for (auto _ : state) benchmark::DoNotOptimize(RunGridSerial(g.corpus, g.translators, g.metrics, {}, g.options));
}
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);

void BM_GridParallel(benchmark::State& state) {
  Grid g = MakeGrid();
  g.options.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RunGrid(g.corpus, g.translators, g.metrics, {}, g.options));
}
BENCHMARK(BM_GridParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SyntheticSerial(benchmark::State& state) {
  SyntheticConfig cfg;
  cfg.sigma = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(RunSyntheticSerial(cfg));
}
BENCHMARK(BM_SyntheticSerial)->Unit(benchmark::kMillisecond);

void BM_SyntheticParallel(benchmark::State& state) {
  SyntheticConfig cfg;
  cfg.sigma = 0.5;
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RunSynthetic(cfg, jobs));
}
BENCHMARK(BM_SyntheticParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace docrerank

BENCHMARK_MAIN();
