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

#include "docrerank/harness.h"

#include <algorithm>
#include <set>
#include <thread>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "docrerank/errors.h"
#include "docrerank/reranker.h"
#include "docrerank/rng.h"
#include "docrerank/timing.h"

namespace docrerank {
namespace {

std::string PairKey(const ExperimentDoc& doc) {
  return std::string(LanguageCode(doc.src_lang)) + "-" + LanguageCode(doc.tgt_lang);
}

ScorePlan PlanFor(const MetricSpec& metric, const Document& src, const Document& cand) {
  switch (metric.strategy) {
    case MetricStrategy::kFullDoc: return PlanFullDoc(src, cand);
    case MetricStrategy::kSentenceAvg: return PlanSentenceAvg(src, cand);
    case MetricStrategy::kDocContext: return PlanDocContext(src, cand, metric.context_k);
    case MetricStrategy::kSlide: return PlanSlide(src, cand, metric.slide);
    default: break;
  }
  throw Error(ErrorCode::kInvalidConfig, "metric " + metric.id + " is not a learned metric");
}

std::vector<DocScore> ScoreLearned(const MetricSpec& metric, const ExperimentDoc& doc,
                                   const CandidatePool& pool, std::vector<double>& qe_seconds) {
  const Document src{doc.src_lang, doc.src_text};
  std::vector<DocScore> scores(pool.size());
  std::vector<ScorePlan> plans(pool.size());
  std::vector<ScoreRequest> flat;
  std::vector<size_t> owner;  // candidate index of each flat request
  for (size_t i = 0; i < pool.size(); ++i) {
    try {
      plans[i] = PlanFor(metric, src, Document{doc.tgt_lang, pool.candidates[i].text});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyInput && e.code() != ErrorCode::kBothEmpty) throw;
      scores[i] = DocScore::Discarded(metric.id, 0);
      scores[i].diagnostics["error"] = e.what();
      continue;
    }
    for (const ScoreRequest& req : plans[i].requests) {
      flat.push_back(req);
      owner.push_back(i);
    }
  }

  const ScoreResult result = ScoreRequests(*metric.scorer, metric.model, flat,
                                           metric.batch_limit, metric.retry);
  size_t offset = 0;
  for (size_t b = 0; b < result.batch_sizes.size(); ++b) {
    const double share = result.batch_seconds[b] / static_cast<double>(result.batch_sizes[b]);
    for (size_t j = 0; j < result.batch_sizes[b]; ++j) qe_seconds[owner[offset + j]] += share;
    offset += result.batch_sizes[b];
  }

  offset = 0;
  for (size_t i = 0; i < pool.size(); ++i) {
    const ScorePlan& plan = plans[i];
    if (plan.requests.empty()) continue;
    const std::span<const double> mine(result.scores.data() + offset, plan.requests.size());
    offset += plan.requests.size();
    DocScore s = DocScore::Ok(plan.Aggregate(mine), metric.id,
                              static_cast<int>(plan.requests.size()));
    size_t over_limit = 0;
    for (const ScoreRequest& req : plan.requests) {
      if (req.approx_src_tokens + req.approx_tgt_tokens > 512) ++over_limit;
    }
    if (over_limit > 0) s.diagnostics["requests_over_512_tokens"] = std::to_string(over_limit);
    scores[i] = std::move(s);
  }
  return scores;
}

std::vector<DocScore> ScoreWithJudge(const MetricSpec& metric, const ExperimentDoc& doc,
                                     const CandidatePool& pool, uint64_t seed,
                                     std::vector<double>& qe_seconds) {
  const PromptSet& prompts = metric.prompts ? *metric.prompts : PromptSet::Default();
  const bool critical = metric.strategy == MetricStrategy::kEaPromptCritical;
  std::vector<DocScore> scores;
  scores.reserve(pool.size());
  for (size_t i = 0; i < pool.size(); ++i) {
    const std::string& cand = pool.candidates[i].text;
    if (Trim(cand).empty()) {
      scores.push_back(DocScore::Discarded(metric.id, 0));
      scores.back().diagnostics["error"] = "empty candidate";
      continue;
    }
    std::string prompt;
    if (metric.strategy == MetricStrategy::kGembaDa) {
      prompt = BuildGembaPrompt(doc.src_text, cand, doc.src_lang, doc.tgt_lang, prompts);
    } else {
      prompt = BuildEaPrompt(doc.src_text, cand, doc.src_lang, doc.tgt_lang,
                             prompts.ExampleFor(doc.src_lang, doc.tgt_lang), critical, prompts);
    }
    StageTimer timer;
    scores.push_back(ScoreWithRetries(*metric.chat, prompt, metric.judge,
                                      DeriveSeed(seed, static_cast<uint64_t>(i)), metric.id));
    qe_seconds[i] = timer.Elapsed();
  }
  return scores;
}

struct MetricScores {
  std::vector<DocScore> scores;
  std::vector<double> seconds;
};

// All work for one (doc, translator) pair.
struct UnitResult {
  std::vector<ExperimentRecord> records;
  std::vector<CellFailure> failures;
};

class UnitRunner {
 public:
  UnitRunner(const ExperimentDoc& doc, const TranslatorSpec& translator,
             const std::vector<MetricSpec>& metrics, const std::vector<EvaluatorSpec>& evaluators,
             const GridOptions& options)
      : doc_(doc), translator_(translator), metrics_(metrics), evaluators_(evaluators),
        options_(options) {}

  UnitResult Run() {
    const int max_pool = *std::max_element(options_.pool_sizes.begin(), options_.pool_sizes.end());
    try {
      pool_ = Generate(max_pool);
    } catch (const std::exception& e) {
      for (const MetricSpec& m : metrics_) FailAll(m.id, std::string("generation: ") + e.what());
      return std::move(result_);
    }
    for (const MetricSpec& metric : metrics_) RunMetric(metric);
    return std::move(result_);
  }

 private:
  CandidatePool Generate(int max_pool) {
    TokenBudget budget = translator_.budget;
    if (const auto it = options_.pair_stats.find(PairKey(doc_)); it != options_.pair_stats.end()) {
      if (it->second.mu_src > 0.0 && it->second.mu_tgt > 0.0) {
        budget.mu_src = it->second.mu_src;
        budget.mu_tgt = it->second.mu_tgt;
      }
    }
    DecodingConfig decoding = translator_.decoding;
    decoding.num_candidates = max_pool;
    return GeneratePool(*translator_.backend, Document{doc_.src_lang, doc_.src_text}, doc_.tgt_lang,
                        decoding, budget,
                        DeriveSeed(options_.seed, "generate", doc_.doc_id, translator_.id),
                        translator_.retry);
  }

  const MetricScores& ScoresFor(const MetricSpec& metric) {
    if (auto it = cache_.find(metric.id); it != cache_.end()) return it->second;
    MetricScores out;
    out.seconds.assign(pool_.size(), 0.0);
    const uint64_t seed =
        DeriveSeed(options_.seed, "judge", doc_.doc_id, translator_.id, metric.id);
    out.scores = IsLlmStrategy(metric.strategy)
                     ? ScoreWithJudge(metric, doc_, pool_, seed, out.seconds)
                     : ScoreLearned(metric, doc_, pool_, out.seconds);
    return cache_.emplace(metric.id, std::move(out)).first->second;
  }

  const MetricSpec* FindMetric(const std::string& id) const {
    for (const MetricSpec& m : metrics_) {
      if (m.id == id) return &m;
    }
    return nullptr;
  }

  void RunMetric(const MetricSpec& metric) {
    const MetricScores* primary = nullptr;
    try {
      primary = &ScoresFor(metric);
    } catch (const std::exception& e) {
      FailAll(metric.id, std::string("scoring: ") + e.what());
      return;
    }
    for (int n : options_.pool_sizes) {
      try {
        RunCell(metric, *primary, n);
      } catch (const std::exception& e) {
        Fail(metric.id, n, e.what());
      }
    }
  }

  void RunCell(const MetricSpec& metric, const MetricScores& primary, int n) {
    const size_t size = static_cast<size_t>(n);
    if (size > pool_.size()) {
      throw Error(ErrorCode::kPoolTooSmall, "pool holds only " + std::to_string(pool_.size()) +
                                                " candidates");
    }
    const std::span<const DocScore> prefix(primary.scores.data(), size);
    const MetricScores* fallback = nullptr;
    const bool all_discarded =
        std::none_of(prefix.begin(), prefix.end(), [](const DocScore& s) { return s.ok(); });
    if (all_discarded && !metric.fallback.empty()) {
      const MetricSpec* spec = FindMetric(metric.fallback);
      if (spec == nullptr) {
        throw Error(ErrorCode::kInvalidConfig, "unknown fallback metric " + metric.fallback);
      }
      fallback = &ScoresFor(*spec);
    }
    std::optional<std::span<const DocScore>> fallback_prefix;
    if (fallback) fallback_prefix = std::span<const DocScore>(fallback->scores.data(), size);

    const RerankOutcome outcome =
        SelectBest(prefix, fallback_prefix, TieBreakSeed(options_.seed, doc_.doc_id, metric.id, n));

    ExperimentRecord rec;
    rec.doc_id = doc_.doc_id;
    rec.translator_id = translator_.id;
    rec.metric_id = metric.id;
    rec.pool_size = n;
    rec.chosen_index = outcome.chosen_index;
    rec.used_fallback = outcome.used_fallback;
    rec.tie_broken = outcome.tie_broken;
    rec.length_bucket = doc_.length_bucket;
    rec.src_token_count = doc_.src_token_count;
    rec.granularity = doc_.granularity;
    for (const DocScore& s : outcome.scores) {
      rec.qe_scores.push_back(s.ok() ? s.value : std::nullopt);
    }

    double generate = 0.0;
    double qe = 0.0;
    for (size_t i = 0; i < size; ++i) {
      generate += pool_.candidates[i].latency_seconds;
      qe += primary.seconds[i];
      if (outcome.used_fallback) qe += fallback->seconds[i];
    }
    double evaluate = 0.0;
    for (const EvaluatorSpec& ev : evaluators_) {
      const auto [score, seconds] = Evaluate(ev, outcome.chosen_index);
      rec.eval_scores[ev.id] = score;
      evaluate += seconds;
    }
    rec.runtimes = {{"generate", generate}, {"qe", qe}, {"evaluate", evaluate}};
    result_.records.push_back(std::move(rec));
  }

  std::pair<double, double> Evaluate(const EvaluatorSpec& ev, int index) {
    const auto key = std::make_pair(ev.id, index);
    if (auto it = eval_cache_.find(key); it != eval_cache_.end()) return it->second;
    ScoreRequest req;
    req.src_text = doc_.src_text;
    req.tgt_text = pool_.candidates[static_cast<size_t>(index)].text;
    req.reference = doc_.ref_text;
    const ScoreResult r = ScoreRequests(*ev.scorer, ev.model, std::span<const ScoreRequest>(&req, 1),
                                        1, ev.retry);
    const std::pair<double, double> value{r.scores.front(), r.batch_seconds.front()};
    eval_cache_.emplace(key, value);
    return value;
  }

  void Fail(const std::string& metric_id, int n, const std::string& reason) {
    result_.failures.push_back({doc_.doc_id, translator_.id, metric_id, n, reason});
  }

  void FailAll(const std::string& metric_id, const std::string& reason) {
    for (int n : options_.pool_sizes) Fail(metric_id, n, reason);
  }

  const ExperimentDoc& doc_;
  const TranslatorSpec& translator_;
  const std::vector<MetricSpec>& metrics_;
  const std::vector<EvaluatorSpec>& evaluators_;
  const GridOptions& options_;
  CandidatePool pool_;
  std::map<std::string, MetricScores> cache_;
  std::map<std::pair<std::string, int>, std::pair<double, double>> eval_cache_;
  UnitResult result_;
};

GridResult Merge(std::vector<UnitResult>& units) {
  GridResult out;
  for (UnitResult& u : units) {
    std::move(u.records.begin(), u.records.end(), std::back_inserter(out.records));
    std::move(u.failures.begin(), u.failures.end(), std::back_inserter(out.failures));
  }
  std::sort(out.records.begin(), out.records.end(),
            [](const ExperimentRecord& a, const ExperimentRecord& b) {
              return std::tie(a.doc_id, a.translator_id, a.metric_id, a.pool_size) <
                     std::tie(b.doc_id, b.translator_id, b.metric_id, b.pool_size);
            });
  std::sort(out.failures.begin(), out.failures.end(), [](const CellFailure& a, const CellFailure& b) {
    return std::tie(a.doc_id, a.translator_id, a.metric_id, a.pool_size) <
           std::tie(b.doc_id, b.translator_id, b.metric_id, b.pool_size);
  });
  return out;
}

UnitResult RunUnit(size_t unit, const std::vector<ExperimentDoc>& corpus,
                   const std::vector<TranslatorSpec>& translators,
                   const std::vector<MetricSpec>& metrics,
                   const std::vector<EvaluatorSpec>& evaluators, const GridOptions& options) {
  const ExperimentDoc& doc = corpus[unit / translators.size()];
  const TranslatorSpec& translator = translators[unit % translators.size()];
  try {
    return UnitRunner(doc, translator, metrics, evaluators, options).Run();
  } catch (const std::exception& e) {
    UnitResult r;
    for (const MetricSpec& m : metrics) {
      for (int n : options.pool_sizes) r.failures.push_back({doc.doc_id, translator.id, m.id, n, e.what()});
    }
    return r;
  }
}

}  // namespace

const char* MetricStrategyName(MetricStrategy strategy) {
  switch (strategy) {
    case MetricStrategy::kFullDoc: return "full_doc";
    case MetricStrategy::kSentenceAvg: return "sentence_avg";
    case MetricStrategy::kDocContext: return "doc_context";
    case MetricStrategy::kSlide: return "slide";
    case MetricStrategy::kGembaDa: return "gemba_da";
    case MetricStrategy::kEaPrompt: return "eaprompt";
    case MetricStrategy::kEaPromptCritical: return "eaprompt_critical";
  }
  return "full_doc";
}

MetricStrategy ParseMetricStrategy(const std::string& name) {
  for (MetricStrategy s : {MetricStrategy::kFullDoc, MetricStrategy::kSentenceAvg,
                           MetricStrategy::kDocContext, MetricStrategy::kSlide,
                           MetricStrategy::kGembaDa, MetricStrategy::kEaPrompt,
                           MetricStrategy::kEaPromptCritical}) {
    if (name == MetricStrategyName(s)) return s;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown metric strategy '" + name + "'");
}

bool IsLlmStrategy(MetricStrategy strategy) {
  return strategy == MetricStrategy::kGembaDa || strategy == MetricStrategy::kEaPrompt ||
         strategy == MetricStrategy::kEaPromptCritical;
}

int DefaultJobs() {
#ifdef _OPENMP
  return std::max(1, omp_get_num_procs());
#else
  return std::max(1u, std::thread::hardware_concurrency());
#endif
}

void ValidateGrid(const std::vector<TranslatorSpec>& translators,
                  const std::vector<MetricSpec>& metrics,
                  const std::vector<EvaluatorSpec>& evaluators, const GridOptions& options) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::kInvalidConfig, why); };
  if (translators.empty()) fail("no translators configured");
  if (metrics.empty()) fail("no QE metrics configured");
  if (options.pool_sizes.empty()) fail("no pool sizes configured");
  if (!std::is_sorted(options.pool_sizes.begin(), options.pool_sizes.end()) ||
      std::adjacent_find(options.pool_sizes.begin(), options.pool_sizes.end()) !=
          options.pool_sizes.end()) {
    fail("pool sizes must be strictly increasing");
  }
  if (options.pool_sizes.front() < 1) fail("pool sizes must be >= 1");
  if (options.jobs < 1) fail("jobs must be >= 1");

  std::set<std::string> ids;
  for (const TranslatorSpec& t : translators) {
    if (!ids.insert("t:" + t.id).second) fail("duplicate translator id " + t.id);
    if (!t.backend) fail("translator " + t.id + " has no backend");
    ValidateAgainstBackend(t.decoding, t.backend->Capabilities());
    t.budget.Validate();
  }
  for (const MetricSpec& m : metrics) {
    if (!ids.insert("m:" + m.id).second) fail("duplicate metric id " + m.id);
    if (IsLlmStrategy(m.strategy)) {
      if (!m.chat) fail("metric " + m.id + " has no chat backend");
      m.judge.Validate();
    } else {
      if (!m.scorer) fail("metric " + m.id + " has no scorer backend");
      if (m.batch_limit < 1) fail("metric " + m.id + " batch limit must be >= 1");
      if (m.strategy == MetricStrategy::kSlide && (m.slide.w < 1 || m.slide.s < 1)) {
        fail("metric " + m.id + " needs w >= 1 and s >= 1");
      }
    }
  }
  for (const MetricSpec& m : metrics) {
    if (m.fallback.empty()) continue;
    if (!ids.count("m:" + m.fallback)) fail("metric " + m.id + " falls back to unknown metric " + m.fallback);
    if (m.fallback == m.id) fail("metric " + m.id + " cannot be its own fallback");
  }
  for (const EvaluatorSpec& e : evaluators) {
    if (!ids.insert("e:" + e.id).second) fail("duplicate evaluator id " + e.id);
    if (!e.scorer) fail("evaluator " + e.id + " has no scorer backend");
  }
}

std::vector<DocScore> ScoreCandidates(const MetricSpec& metric, const ExperimentDoc& doc,
                                      const CandidatePool& pool, uint64_t seed,
                                      std::vector<double>* qe_seconds) {
  std::vector<double> seconds(pool.size(), 0.0);
  std::vector<DocScore> scores = IsLlmStrategy(metric.strategy)
                                     ? ScoreWithJudge(metric, doc, pool, seed, seconds)
                                     : ScoreLearned(metric, doc, pool, seconds);
  if (qe_seconds) *qe_seconds = std::move(seconds);
  return scores;
}

GridResult RunGridSerial(const std::vector<ExperimentDoc>& corpus,
                         const std::vector<TranslatorSpec>& translators,
                         const std::vector<MetricSpec>& metrics,
                         const std::vector<EvaluatorSpec>& evaluators, const GridOptions& options) {
  ValidateGrid(translators, metrics, evaluators, options);
  std::vector<UnitResult> units(corpus.size() * translators.size());
  for (size_t u = 0; u < units.size(); ++u) {
    units[u] = RunUnit(u, corpus, translators, metrics, evaluators, options);
  }
  return Merge(units);
}

GridResult RunGrid(const std::vector<ExperimentDoc>& corpus,
                   const std::vector<TranslatorSpec>& translators,
                   const std::vector<MetricSpec>& metrics,
                   const std::vector<EvaluatorSpec>& evaluators, const GridOptions& options) {
  ValidateGrid(translators, metrics, evaluators, options);
  const long count = static_cast<long>(corpus.size() * translators.size());
  std::vector<UnitResult> units(static_cast<size_t>(count));
#pragma omp parallel for schedule(dynamic, 1) num_threads(options.jobs)
  for (long u = 0; u < count; ++u) {
    units[static_cast<size_t>(u)] =
        RunUnit(static_cast<size_t>(u), corpus, translators, metrics, evaluators, options);
  }
  return Merge(units);
}

}  // namespace docrerank
