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

#include <sstream>

#include "json.hpp"

#include "docrerank/cli.h"
#include "docrerank/config.h"
#include "docrerank/mock_backends.h"
#include "test_util.h"

namespace docrerank {
namespace {

using namespace docrerank::testing;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Ingest(const TempDir& dir) {
  const Result r = Cli({"ingest", "--out", dir.File("corpus"), TestData("wmt_sample.jsonl")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  return dir.File("corpus/corpus.jsonl");
}

TEST(Cli, IngestWritesCorpusAndManifest) {
  TempDir dir;
  const Result r = Cli({"ingest", "--out", dir.File("c"), "--no-mix", TestData("wmt_sample.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("documents"), std::string::npos);
  const auto manifest = nlohmann::json::parse(ReadFile(dir.File("c/manifest.json")));
  EXPECT_EQ(manifest.at("stats").at("documents"), 5);
  EXPECT_FALSE(ReadFile(dir.File("c/corpus.jsonl")).empty());
}

TEST(Cli, IngestErrors) {
  TempDir dir;
  Result r = Cli({"ingest", "--out", dir.File("c"), TestData("empty.jsonl")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("no records"), std::string::npos);
  r = Cli({"ingest", "--out", dir.File("c"), TestData("no_ref.tsv")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("doc-a"), std::string::npos);
  r = Cli({"ingest", "--out", dir.File("c"), dir.File("does-not-exist.jsonl")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_EQ(Cli({}).code, kExitInputError);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitInputError);
}

TEST(Cli, MockRunWritesReports) {
  TempDir dir;
  const std::string corpus = Ingest(dir);
  const Result r = Cli({"run", "--mock", "--corpus", corpus, "--out", dir.File("run"), "--pool-sizes",
                        "1,2,4", "--metrics", "comet-kiwi,slide-w7-s1", "--translators", "alma-7b"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* f : {"report.csv", "plotdata.json", "outcomes.jsonl", "failures.jsonl", "config.json",
                        "manifest.json"}) {
    EXPECT_FALSE(ReadFile(dir.File(std::string("run/") + f)).empty() && std::string(f) != "failures.jsonl") << f;
  }
  const std::string csv = ReadFile(dir.File("run/report.csv"));
  EXPECT_EQ(csv.rfind("translator,qe_metric,evaluator,stat,1,2,4\n", 0), 0u);
  const auto manifest = nlohmann::json::parse(ReadFile(dir.File("run/manifest.json")));
  EXPECT_EQ(manifest.at("failed_cells"), 0);
  // The canonical config replays the same run.
  const Result again = Cli({"run", "--mock", "--config", dir.File("run/config.json"), "--out", dir.File("run2")});
  ASSERT_EQ(again.code, kExitOk) << again.err;
  EXPECT_EQ(ReadFile(dir.File("run2/report.csv")), csv);
}

TEST(Cli, BaselineOnlyRunHasZeroDeltas) {
  TempDir dir;
  const std::string corpus = Ingest(dir);
  const Result r = Cli({"run", "--mock", "--corpus", corpus, "--out", dir.File("run"), "--pool-sizes", "1",
                        "--metrics", "comet-kiwi,gemba-da"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream csv(ReadFile(dir.File("run/report.csv")));
  std::string line;
  std::getline(csv, line);
  int deltas = 0;
  while (std::getline(csv, line)) {
    if (line.find(",delta,") == std::string::npos) continue;
    ++deltas;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "0.000000") << line;
  }
  EXPECT_GT(deltas, 0);
}

TEST(Cli, InvalidConfigFailsBeforeBackends) {
  TempDir dir;
  const std::string corpus = Ingest(dir);
  const Result r = Cli({"run", "--corpus", corpus, "--out", dir.File("run"), "--pool-sizes", "2,4"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("baseline"), std::string::npos) << r.err;
}

TEST(Cli, UnreachableBackendExitsThree) {
  TempDir dir;
  const std::string corpus = Ingest(dir);
  auto cfg = RunConfig::Defaults().ToJson();
  for (auto& [name, b] : cfg["backends"].items()) b["url"] = "http://127.0.0.1:1";
  WriteText(dir.File("cfg.json"), cfg.dump());
  const Result r = Cli({"run", "--config", dir.File("cfg.json"), "--corpus", corpus, "--out", dir.File("run")});
  EXPECT_EQ(r.code, kExitBackendError);
  EXPECT_NE(r.err.find("http://127.0.0.1:1"), std::string::npos) << r.err;
}

void WriteRerankInputs(const TempDir& dir, const std::vector<std::string>& candidates) {
  WriteText(dir.File("src.jsonl"),
            R"({"doc_id": "d1", "src_lang": "en", "tgt_lang": "ja", "src_text": "The cat sleeps. The dog barks."})"
            "\n");
  WriteText(dir.File("cand.jsonl"), nlohmann::json{{"doc_id", "d1"}, {"candidates", candidates}}.dump() + "\n");
}

TEST(Cli, RerankPicksMockArgmax) {
  TempDir dir;
  const std::vector<std::string> cands = {"猫が寝る。犬が吠える。", "猫は寝ている。犬が吠えている。",
                                          "ネコ寝る。イヌ吠える。", "猫が眠る。犬がほえる。"};
  WriteRerankInputs(dir, cands);
  const Result r = Cli({"rerank", "--mock", "--src", dir.File("src.jsonl"), "--candidates", dir.File("cand.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;

  std::string model;
  for (const MetricConfig& m : RunConfig::Defaults().metrics) {
    if (m.id == "comet-kiwi") model = m.model;
  }
  size_t best = 0;
  double best_score = -1;
  for (size_t i = 0; i < cands.size(); ++i) {
    ScoreRequest req;
    req.src_text = "The cat sleeps. The dog barks.";
    req.tgt_text = cands[i];
    const double s = MockScore(model, req);
    if (s > best_score) {
      best_score = s;
      best = i;
    }
  }
  std::istringstream lines(r.out);
  std::string chosen, record;
  std::getline(lines, chosen);
  std::getline(lines, record);
  EXPECT_EQ(chosen, cands[best]);
  EXPECT_EQ(nlohmann::json::parse(record).at("chosen_index"), best);
}

TEST(Cli, RerankSingleCandidate) {
  TempDir dir;
  WriteRerankInputs(dir, {"唯一の候補。"});
  const Result r = Cli({"rerank", "--mock", "--src", dir.File("src.jsonl"), "--candidates", dir.File("cand.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "唯一の候補。");
}

TEST(Cli, RerankAllDiscardedExitsFour) {
  TempDir dir;
  WriteRerankInputs(dir, {"", "   "});
  const Result r = Cli({"rerank", "--mock", "--src", dir.File("src.jsonl"), "--candidates", dir.File("cand.jsonl")});
  EXPECT_EQ(r.code, kExitNoValidCandidate) << r.err;
}

TEST(Cli, RerankMisalignedInputExitsTwo) {
  TempDir dir;
  WriteRerankInputs(dir, {"候補。"});
  WriteText(dir.File("other.jsonl"), R"({"doc_id": "d2", "candidates": ["x"]})" "\n");
  Result r = Cli({"rerank", "--mock", "--src", dir.File("src.jsonl"), "--candidates", dir.File("other.jsonl")});
  EXPECT_EQ(r.code, kExitInputError);
  WriteText(dir.File("two.jsonl"), R"({"doc_id": "d1", "candidates": ["x"]})" "\n" R"({"doc_id": "d2", "candidates": ["x"]})" "\n");
  r = Cli({"rerank", "--mock", "--src", dir.File("src.jsonl"), "--candidates", dir.File("two.jsonl")});
  EXPECT_EQ(r.code, kExitInputError);
}

}  // namespace
}  // namespace docrerank
