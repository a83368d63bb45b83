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

#include "docrerank/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "docrerank/config.h"
#include "docrerank/dataset.h"
#include "docrerank/errors.h"
#include "docrerank/harness.h"
#include "docrerank/http_backends.h"
#include "docrerank/report.h"
#include "docrerank/rng.h"
#include "json.hpp"

namespace docrerank {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBackendUnreachable:
    case ErrorCode::kBackendError:
    case ErrorCode::kScoreCountMismatch:
      return kExitBackendError;
    case ErrorCode::kNoValidCandidate:
    case ErrorCode::kMissingBaseline:
      return kExitNoValidCandidate;
    default:
      return kExitInputError;
  }
}

struct CommonFlags {
  std::string config_path;
  bool mock = false;
  int jobs = 0;
  std::string pool_sizes;
  std::string metrics;
  std::string translators;
  std::optional<uint64_t> seed;
  std::string out;
};

RunConfig LoadConfig(const CommonFlags& f) {
  RunConfig cfg = f.config_path.empty() ? RunConfig::Defaults() : RunConfig::FromFile(f.config_path);
  if (!f.pool_sizes.empty()) cfg.pool_sizes = ParseIntList(f.pool_sizes);
  if (!f.metrics.empty()) cfg.SelectMetrics(ParseIdList(f.metrics));
  if (!f.translators.empty()) cfg.SelectTranslators(ParseIdList(f.translators));
  if (f.seed) cfg.seed = *f.seed;
  if (f.jobs > 0) cfg.jobs = f.jobs;
  if (!f.out.empty()) cfg.output_dir = f.out;
  cfg.Validate();
  return cfg;
}

Json StatsJson(const DatasetStats& s) {
  Json j;
  j["documents"] = s.documents;
  j["full_documents"] = s.full_documents;
  j["paragraphs"] = s.paragraphs;
  j["mean_src_sentences"] = s.mean_src_sentences;
  j["mean_src_tokens"] = s.mean_src_tokens;
  Json pairs = Json::object();
  for (const auto& [key, p] : s.pairs) {
    pairs[key] = {{"documents", p.documents}, {"mu_src", p.mu_src}, {"mu_tgt", p.mu_tgt}};
  }
  j["pairs"] = pairs;
  return j;
}

void PrintStats(const DatasetStats& s, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof(line),
                "documents %zu (full %zu, paragraphs %zu), mean sentences %.2f, mean tokens %.1f\n",
                s.documents, s.full_documents, s.paragraphs, s.mean_src_sentences,
                s.mean_src_tokens);
  out << line;
  for (const auto& [key, p] : s.pairs) {
    std::snprintf(line, sizeof(line), "  %s: %zu docs, mu_src %.2f, mu_tgt %.2f\n", key.c_str(),
                  p.documents, p.mu_src, p.mu_tgt);
    out << line;
  }
}

std::string OutDir(const RunConfig& cfg) { return cfg.output_dir.empty() ? "." : cfg.output_dir; }

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + dir + ": " + ec.message());
}

std::string Path(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

int Ingest(const CommonFlags& f, std::vector<std::string> inputs, bool no_mix, std::ostream& out,
           std::ostream& err) {
  RunConfig cfg = LoadConfig(f);
  if (inputs.empty()) inputs = cfg.inputs;
  if (inputs.empty()) {
    err << "error: no input files given\n";
    return kExitInputError;
  }
  if (no_mix) cfg.mix_paragraphs = false;
  cfg.inputs = inputs;

  std::vector<SourceRecord> records;
  for (const std::string& path : inputs) {
    std::vector<SourceRecord> part = ReadRecords(path);
    std::move(part.begin(), part.end(), std::back_inserter(records));
  }
  if (records.empty()) {
    err << "error: no records in input\n";
    return kExitInputError;
  }
  const std::vector<ExperimentDoc> docs = MergeSegments(std::move(records));
  const std::vector<ExperimentDoc> paragraphs = SplitParagraphs(docs);
  std::vector<ExperimentDoc> corpus;
  std::string sampling;
  if (cfg.mix_paragraphs && !paragraphs.empty()) {
    corpus = BuildMix(docs, paragraphs, DeriveSeed(cfg.seed, "ingest"));
    sampling = "balanced mix: min(documents, paragraphs) of each, seeded sample";
  } else {
    corpus = docs;
    sampling = "full documents only";
  }
  for (ExperimentDoc& d : corpus) d.length_bucket = BucketLabel(d.src_token_count, cfg.Edges());

  const std::string dir = OutDir(cfg);
  EnsureDir(dir);
  const std::string corpus_path = Path(dir, "corpus.jsonl");
  std::ostringstream buf;
  WriteCorpusJsonl(corpus, buf);
  WriteFile(corpus_path, buf.str());

  const DatasetStats stats = ComputeStats(corpus);
  cfg.corpus = corpus_path;
  Json manifest;
  manifest["tool"] = "docrerank";
  manifest["version"] = kVersion;
  manifest["command"] = "ingest";
  manifest["seed"] = cfg.seed;
  manifest["sampling"] = sampling;
  manifest["bucket_edges"] = cfg.Edges();
  manifest["source_documents"] = docs.size();
  manifest["source_paragraphs"] = paragraphs.size();
  manifest["stats"] = StatsJson(stats);
  manifest["config"] = cfg.ToJson();
  WriteFile(Path(dir, "manifest.json"), manifest.dump(2) + "\n");

  PrintStats(stats, out);
  out << "wrote " << corpus_path << "\n";
  return kExitOk;
}

std::vector<ExperimentDoc> LoadCorpus(const RunConfig& cfg, const std::string& override_path) {
  const std::string path = override_path.empty() ? cfg.corpus : override_path;
  if (path.empty()) throw Error(ErrorCode::kInvalidConfig, "no corpus given");
  std::vector<ExperimentDoc> corpus = ReadCorpus(path);
  if (corpus.empty()) throw Error(ErrorCode::kEmptyInput, "no records in " + path);
  for (ExperimentDoc& d : corpus) d.length_bucket = BucketLabel(d.src_token_count, cfg.Edges());
  return corpus;
}

// Exit code 3 when any configured endpoint does not answer.
int Preflight(const BuiltGrid& grid, std::ostream& err) {
  for (const std::string& url : grid.endpoints) {
    std::string detail;
    if (!ProbeEndpoint(url, &detail)) {
      err << "error: backend unreachable: " << url << " (" << detail << ")\n";
      return kExitBackendError;
    }
  }
  return kExitOk;
}

int Run(const CommonFlags& f, const std::string& corpus_path, std::ostream& out, std::ostream& err) {
  RunConfig cfg = LoadConfig(f);
  std::vector<ExperimentDoc> corpus = LoadCorpus(cfg, corpus_path);
  if (!corpus_path.empty()) cfg.corpus = corpus_path;
  const BuiltGrid grid = BuildGrid(cfg, f.mock);
  if (!f.mock) {
    if (int code = Preflight(grid, err); code != kExitOk) return code;
  }

  const DatasetStats stats = ComputeStats(corpus);
  GridOptions options;
  options.pool_sizes = cfg.pool_sizes;
  options.seed = cfg.seed;
  options.jobs = cfg.jobs > 0 ? cfg.jobs : DefaultJobs();
  options.pair_stats = stats.pairs;
  const GridResult result = RunGrid(corpus, grid.translators, grid.metrics, grid.evaluators, options);

  const std::string dir = OutDir(cfg);
  EnsureDir(dir);
  std::ostringstream failures;
  for (const CellFailure& c : result.failures) {
    failures << Json{{"doc_id", c.doc_id}, {"translator", c.translator_id}, {"metric", c.metric_id},
                     {"pool_size", c.pool_size}, {"reason", c.reason}}
                    .dump()
             << "\n";
  }
  WriteFile(Path(dir, "failures.jsonl"), failures.str());
  if (result.records.empty()) {
    err << "error: every grid cell failed";
    if (!result.failures.empty()) err << "; first failure: " << result.failures.front().reason;
    err << "\n";
    return kExitBackendError;
  }

  std::ostringstream outcomes;
  WriteRecordsJsonl(result.records, outcomes);
  WriteFile(Path(dir, "outcomes.jsonl"), outcomes.str());
  const ReportInputs report = BuildReport(result.records);
  EmitReport(dir, report);
  WriteFile(Path(dir, "config.json"), cfg.ToJson().dump(2) + "\n");

  Json manifest;
  manifest["tool"] = "docrerank";
  manifest["version"] = kVersion;
  manifest["command"] = "run";
  manifest["mock"] = f.mock;
  manifest["seed"] = cfg.seed;
  manifest["aggregation"] = "unweighted per-document mean";
  manifest["bucket_edges"] = cfg.Edges();
  manifest["stats"] = StatsJson(stats);
  manifest["records"] = result.records.size();
  manifest["failed_cells"] = result.failures.size();
  manifest["config"] = cfg.ToJson();
  WriteFile(Path(dir, "manifest.json"), manifest.dump(2) + "\n");

  out << result.records.size() << " cells, " << result.failures.size() << " failed; wrote "
      << Path(dir, "report.csv") << "\n";
  return kExitOk;
}

struct RerankInput {
  std::string doc_id;
  Language src_lang = Language::kEnglish;
  Language tgt_lang = Language::kJapanese;
  std::string text;
  std::vector<std::string> candidates;
};

std::vector<nlohmann::json> ReadJsonLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path);
  std::vector<nlohmann::json> out;
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedInput, path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

std::vector<RerankInput> ReadRerankInputs(const std::string& src_path, const std::string& cand_path) {
  const auto sources = ReadJsonLines(src_path);
  const auto cands = ReadJsonLines(cand_path);
  if (sources.empty()) throw Error(ErrorCode::kEmptyInput, "no records in " + src_path);
  if (sources.size() != cands.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(sources.size()) + " sources but " +
                                                std::to_string(cands.size()) + " candidate records");
  }
  std::vector<RerankInput> out;
  for (size_t i = 0; i < sources.size(); ++i) {
    RerankInput r;
    try {
      r.doc_id = sources[i].at("doc_id").get<std::string>();
      r.src_lang = ParseLanguage(sources[i].at("src_lang").get<std::string>());
      r.tgt_lang = ParseLanguage(sources[i].at("tgt_lang").get<std::string>());
      r.text = sources[i].at("src_text").get<std::string>();
      const std::string cand_id = cands[i].at("doc_id").get<std::string>();
      if (cand_id != r.doc_id) {
        throw Error(ErrorCode::kLengthMismatch, "line " + std::to_string(i + 1) + ": source " +
                                                    r.doc_id + " is paired with candidates for " +
                                                    cand_id);
      }
      r.candidates = cands[i].at("candidates").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedInput, "line " + std::to_string(i + 1) + ": " + e.what());
    }
    if (r.candidates.empty()) {
      throw Error(ErrorCode::kLengthMismatch, "document " + r.doc_id + " has no candidates");
    }
    out.push_back(std::move(r));
  }
  return out;
}

int Rerank(const CommonFlags& f, const std::string& src_path, const std::string& cand_path,
           const std::string& metric_id, std::ostream& out, std::ostream& err) {
  CommonFlags flags = f;
  flags.metrics = metric_id;
  RunConfig cfg = LoadConfig(flags);
  const std::vector<RerankInput> inputs = ReadRerankInputs(src_path, cand_path);
  const BuiltGrid grid = BuildGrid(cfg, f.mock);
  if (!f.mock) {
    if (int code = Preflight(grid, err); code != kExitOk) return code;
  }
  const MetricSpec& metric = grid.metrics.front();
  const MetricSpec* fallback = nullptr;
  for (const MetricSpec& m : grid.metrics) {
    if (!metric.fallback.empty() && m.id == metric.fallback) fallback = &m;
  }

  int status = kExitOk;
  for (const RerankInput& in : inputs) {
    const ExperimentDoc doc =
        MakeExperimentDoc(in.doc_id, Granularity::kFullDocument, in.src_lang, in.tgt_lang, in.text, "");
    CandidatePool pool;
    for (size_t i = 0; i < in.candidates.size(); ++i) {
      pool.candidates.push_back({static_cast<int>(i), in.candidates[i], {}, 0.0});
    }
    pool.requested = pool.size();
    const uint64_t seed = DeriveSeed(cfg.seed, "judge", doc.doc_id, metric.id);
    const std::vector<DocScore> scores = ScoreCandidates(metric, doc, pool, seed);
    std::optional<std::vector<DocScore>> fb;
    if (fallback && std::none_of(scores.begin(), scores.end(), [](const DocScore& s) { return s.ok(); })) {
      fb = ScoreCandidates(*fallback, doc, pool, DeriveSeed(cfg.seed, "judge", doc.doc_id, fallback->id));
    }
    const int n = static_cast<int>(pool.size());
    RerankOutcome outcome;
    try {
      outcome = SelectBest(scores, fb ? std::optional<std::span<const DocScore>>(*fb) : std::nullopt,
                           TieBreakSeed(cfg.seed, doc.doc_id, metric.id, n));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoValidCandidate) throw;
      err << "error: " << doc.doc_id << ": " << e.what() << "\n";
      status = kExitNoValidCandidate;
      continue;
    }
    Json qe = Json::array();
    for (const DocScore& s : outcome.scores) qe.push_back(s.ok() ? Json(*s.value) : Json(nullptr));
    Json rec;
    rec["doc_id"] = doc.doc_id;
    rec["metric"] = outcome.metric_id;
    rec["pool_size"] = n;
    rec["chosen_index"] = outcome.chosen_index;
    rec["used_fallback"] = outcome.used_fallback;
    rec["tie_broken"] = outcome.tie_broken;
    rec["qe_scores"] = qe;
    rec["chosen_text"] = in.candidates[static_cast<size_t>(outcome.chosen_index)];
    out << in.candidates[static_cast<size_t>(outcome.chosen_index)] << "\n" << rec.dump() << "\n";
  }
  return status;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Document-level QE reranking toolkit", "docrerank"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonFlags flags;
  auto add_common = [&flags](CLI::App* cmd) {
    cmd->add_option("--config", flags.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--seed", flags.seed, "run seed");
    cmd->add_option("--out", flags.out, "output directory");
  };
  auto add_grid = [&flags](CLI::App* cmd) {
    cmd->add_flag("--mock", flags.mock, "use deterministic in-process backends");
    cmd->add_option("--jobs", flags.jobs, "worker threads (default: logical processors)")
        ->check(CLI::PositiveNumber);
  };

  std::vector<std::string> inputs;
  bool no_mix = false;
  CLI::App* ingest = app.add_subcommand("ingest", "merge WMT-style records into a corpus");
  add_common(ingest);
  ingest->add_option("inputs", inputs, "record files (.tsv or JSON lines)")->check(CLI::ExistingFile);
  ingest->add_flag("--no-mix", no_mix, "keep full documents only");

  std::string corpus_path;
  CLI::App* run = app.add_subcommand("run", "run the reranking grid and write reports");
  add_common(run);
  add_grid(run);
  run->add_option("--corpus", corpus_path, "corpus written by ingest")->check(CLI::ExistingFile);
  run->add_option("--pool-sizes", flags.pool_sizes, "comma-separated pool sizes");
  run->add_option("--metrics", flags.metrics, "comma-separated QE metric ids");
  run->add_option("--translators", flags.translators, "comma-separated translator ids");

  std::string src_path, cand_path, metric_id = "comet-kiwi";
  CLI::App* rerank = app.add_subcommand("rerank", "pick the best candidate per document");
  add_common(rerank);
  add_grid(rerank);
  rerank->add_option("--src", src_path, "sources, JSON lines {doc_id, src_lang, tgt_lang, src_text}")
      ->required()
      ->check(CLI::ExistingFile);
  rerank->add_option("--candidates", cand_path, "JSON lines {doc_id, candidates: [...]}")
      ->required()
      ->check(CLI::ExistingFile);
  rerank->add_option("--metric", metric_id, "QE metric id");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*ingest) return Ingest(flags, inputs, no_mix, out, err);
    if (*run) return Run(flags, corpus_path, out, err);
    return Rerank(flags, src_path, cand_path, metric_id, out, err);
  } catch (const BackendUnreachable& e) {
    err << "error: backend unreachable: " << e.endpoint() << "\n  " << e.what() << "\n";
    return kExitBackendError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace docrerank
