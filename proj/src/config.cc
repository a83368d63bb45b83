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

#include "docrerank/config.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "docrerank/dataset.h"
#include "docrerank/errors.h"
#include "docrerank/http_backends.h"
#include "docrerank/mock_backends.h"

namespace docrerank {
namespace {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& why) { throw Error(ErrorCode::kInvalidConfig, why); }

void RejectUnknown(const Json& j, std::initializer_list<const char*> known, const std::string& where) {
  if (!j.is_object()) Fail(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      Fail("unknown key '" + key + "' in " + where);
    }
  }
}

// Reads j[key] into out when present, with a type check.
template <typename T>
void Get(const Json& j, const char* key, T& out, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    Fail("bad type for '" + std::string(key) + "' in " + where);
  }
}

const char* KindName(BackendKind kind) {
  switch (kind) {
    case BackendKind::kTranslator: return "translator";
    case BackendKind::kScorer: return "scorer";
    case BackendKind::kChat: return "chat";
  }
  return "scorer";
}

BackendKind ParseKind(const std::string& name) {
  if (name == "translator") return BackendKind::kTranslator;
  if (name == "scorer") return BackendKind::kScorer;
  if (name == "chat") return BackendKind::kChat;
  Fail("unknown backend kind '" + name + "'");
}

JudgeKind JudgeKindFor(MetricStrategy s) {
  switch (s) {
    case MetricStrategy::kEaPrompt: return JudgeKind::kEaPrompt;
    case MetricStrategy::kEaPromptCritical: return JudgeKind::kEaPromptCritical;
    default: return JudgeKind::kGembaDa;
  }
}

DecodingConfig ParseDecoding(const Json& j, const std::string& where) {
  RejectUnknown(j, {"strategy", "p", "epsilon", "temperature", "groups", "diversity"}, where);
  std::string strategy = "nucleus";
  Get(j, "strategy", strategy, where);
  DecodingConfig d;
  d.strategy = ParseStrategy(strategy);
  if (d.strategy == DecodingStrategy::kDiverseBeam) d.temperature = 0.0;
  Get(j, "p", d.p, where);
  Get(j, "epsilon", d.epsilon, where);
  Get(j, "temperature", d.temperature, where);
  Get(j, "groups", d.groups, where);
  Get(j, "diversity", d.diversity, where);
  return d;
}

OJson DecodingToJson(const DecodingConfig& d) {
  OJson j;
  j["strategy"] = StrategyName(d.strategy);
  switch (d.strategy) {
    case DecodingStrategy::kNucleus: j["p"] = d.p; break;
    case DecodingStrategy::kEpsilon: j["epsilon"] = d.epsilon; break;
    case DecodingStrategy::kDiverseBeam:
      j["groups"] = d.groups;
      j["diversity"] = d.diversity;
      break;
  }
  j["temperature"] = d.temperature;
  return j;
}

RetryPolicy ParseRetry(const Json& j) {
  RejectUnknown(j, {"max_retries", "initial_backoff_ms", "multiplier"}, "retry");
  RetryPolicy r;
  int64_t ms = r.initial_backoff.count();
  Get(j, "max_retries", r.max_retries, "retry");
  Get(j, "initial_backoff_ms", ms, "retry");
  Get(j, "multiplier", r.multiplier, "retry");
  r.initial_backoff = std::chrono::milliseconds(ms);
  return r;
}

MetricConfig LearnedMetric(std::string id, MetricStrategy strategy, std::string model) {
  MetricConfig m;
  m.id = std::move(id);
  m.strategy = strategy;
  m.backend = "qe";
  m.model = std::move(model);
  return m;
}

MetricConfig JudgeMetric(std::string id, MetricStrategy strategy) {
  MetricConfig m;
  m.id = std::move(id);
  m.strategy = strategy;
  m.backend = "judge";
  m.judge = JudgeConfig::ForKind(JudgeKindFor(strategy));
  m.fallback = "comet-kiwi";
  return m;
}

}  // namespace

RunConfig RunConfig::Defaults() {
  RunConfig c;
  c.backends["alma"] = {BackendKind::kTranslator, "http://127.0.0.1:8101", "/v1/translate", "", 600, 32};
  c.backends["nllb"] = {BackendKind::kTranslator, "http://127.0.0.1:8102", "/v1/translate", "", 600, 32};
  c.backends["yaraku"] = {BackendKind::kTranslator, "http://127.0.0.1:8103", "/v1/translate",
                          "YARAKU_API_KEY", 600, 32};
  c.backends["qe"] = {BackendKind::kScorer, "http://127.0.0.1:8000", "/v1/score", "", 300, 32};
  c.backends["judge"] = {BackendKind::kChat, "http://127.0.0.1:8000", "/v1/chat", "JUDGE_API_KEY", 300, 32};
  c.backends["eval"] = {BackendKind::kScorer, "http://127.0.0.1:8000", "/v1/score", "EVAL_API_KEY", 300, 32};

  c.translators.push_back({"alma-7b", "alma", DecodingConfig::Nucleus(0.9, 0.6), {}});
  c.translators.push_back({"nllb-3.3b", "nllb", DecodingConfig::Epsilon(0.02, 0.5), {}});
  c.translators.push_back({"yaraku", "yaraku", DecodingConfig::DiverseBeam(16, 0.5), {}});

  const std::string kiwi = "Unbabel/wmt22-cometkiwi-da";
  const std::string qe = "Unbabel/wmt20-comet-qe-da";
  c.metrics.push_back(LearnedMetric("comet-kiwi", MetricStrategy::kFullDoc, kiwi));
  c.metrics.push_back(LearnedMetric("comet-qe", MetricStrategy::kFullDoc, qe));
  c.metrics.push_back(LearnedMetric("comet-kiwi-sentence", MetricStrategy::kSentenceAvg, kiwi));
  c.metrics.push_back(LearnedMetric("comet-qe-sentence", MetricStrategy::kSentenceAvg, qe));
  c.metrics.push_back(LearnedMetric("doc-comet-qe", MetricStrategy::kDocContext, qe));
  MetricConfig s7 = LearnedMetric("slide-w7-s7", MetricStrategy::kSlide, kiwi);
  s7.slide = {7, 7, WindowWeighting::kSentenceCount};
  c.metrics.push_back(s7);
  MetricConfig s1 = LearnedMetric("slide-w7-s1", MetricStrategy::kSlide, kiwi);
  s1.slide = {7, 1, WindowWeighting::kSentenceCount};
  c.metrics.push_back(s1);
  c.metrics.push_back(JudgeMetric("gemba-da", MetricStrategy::kGembaDa));
  c.metrics.push_back(JudgeMetric("eaprompt", MetricStrategy::kEaPrompt));
  c.metrics.push_back(JudgeMetric("eaprompt-critical", MetricStrategy::kEaPromptCritical));

  c.evaluators.push_back({"bleurt-20", "eval", "lucadiliello/BLEURT-20"});
  c.evaluators.push_back({"comet-22", "eval", "Unbabel/wmt22-comet-da"});
  c.evaluators.push_back({"gemba-da-ref", "eval", "gemba-da-ref"});
  return c;
}

RunConfig RunConfig::FromJson(const Json& j) {
  RejectUnknown(j,
                {"corpus", "inputs", "prompts_dir", "backends", "translators", "metrics",
                 "evaluators", "pool_sizes", "bucket_edges", "seed", "jobs", "mix_paragraphs",
                 "output_dir", "retry", "mock"},
                "config");
  RunConfig c = Defaults();
  Get(j, "corpus", c.corpus, "config");
  Get(j, "inputs", c.inputs, "config");
  Get(j, "prompts_dir", c.prompts_dir, "config");
  Get(j, "pool_sizes", c.pool_sizes, "config");
  Get(j, "bucket_edges", c.bucket_edges, "config");
  Get(j, "seed", c.seed, "config");
  Get(j, "jobs", c.jobs, "config");
  Get(j, "mix_paragraphs", c.mix_paragraphs, "config");
  Get(j, "output_dir", c.output_dir, "config");
  if (j.contains("retry")) c.retry = ParseRetry(j["retry"]);

  if (j.contains("mock")) {
    const Json& m = j["mock"];
    RejectUnknown(m,
                  {"generate_seconds_per_candidate", "qe_seconds_per_request",
                   "chat_seconds_per_call", "evaluate_seconds_per_request", "simulate", "chat_mode"},
                  "mock");
    Get(m, "generate_seconds_per_candidate", c.mock.generate_seconds_per_candidate, "mock");
    Get(m, "qe_seconds_per_request", c.mock.qe_seconds_per_request, "mock");
    Get(m, "chat_seconds_per_call", c.mock.chat_seconds_per_call, "mock");
    Get(m, "evaluate_seconds_per_request", c.mock.evaluate_seconds_per_request, "mock");
    Get(m, "simulate", c.mock.simulate, "mock");
    Get(m, "chat_mode", c.mock.chat_mode, "mock");
  }

  if (j.contains("backends")) {
    if (!j["backends"].is_object()) Fail("backends must be an object");
    c.backends.clear();
    for (const auto& [name, b] : j["backends"].items()) {
      const std::string where = "backend " + name;
      RejectUnknown(b, {"kind", "url", "path", "credential_env", "timeout_seconds", "max_batch"}, where);
      BackendConfig bc;
      std::string kind;
      Get(b, "kind", kind, where);
      if (kind.empty()) Fail(where + " needs a kind");
      bc.kind = ParseKind(kind);
      bc.path = bc.kind == BackendKind::kTranslator ? "/v1/translate"
                : bc.kind == BackendKind::kScorer   ? "/v1/score"
                                                    : "/v1/chat";
      Get(b, "url", bc.url, where);
      Get(b, "path", bc.path, where);
      Get(b, "credential_env", bc.credential_env, where);
      Get(b, "timeout_seconds", bc.timeout_seconds, where);
      Get(b, "max_batch", bc.max_batch, where);
      c.backends[name] = bc;
    }
  }

  if (j.contains("translators")) {
    if (!j["translators"].is_array()) Fail("translators must be an array");
    c.translators.clear();
    for (const Json& t : j["translators"]) {
      RejectUnknown(t, {"id", "backend", "decoding", "budget"}, "translator");
      TranslatorConfig tc;
      Get(t, "id", tc.id, "translator");
      const std::string where = "translator " + tc.id;
      Get(t, "backend", tc.backend, where);
      if (t.contains("decoding")) tc.decoding = ParseDecoding(t["decoding"], where + " decoding");
      if (t.contains("budget")) {
        const Json& b = t["budget"];
        RejectUnknown(b, {"alpha_a", "alpha_m", "ceiling"}, where + " budget");
        Get(b, "alpha_a", tc.budget.alpha_a, where);
        Get(b, "alpha_m", tc.budget.alpha_m, where);
        Get(b, "ceiling", tc.budget.ceiling, where);
      }
      c.translators.push_back(tc);
    }
  }

  if (j.contains("metrics")) {
    if (!j["metrics"].is_array()) Fail("metrics must be an array");
    c.metrics.clear();
    for (const Json& m : j["metrics"]) {
      RejectUnknown(m,
                    {"id", "strategy", "backend", "model", "batch_limit", "w", "s", "weighting",
                     "k", "judge", "fallback"},
                    "metric");
      MetricConfig mc;
      Get(m, "id", mc.id, "metric");
      const std::string where = "metric " + mc.id;
      std::string strategy = "full_doc";
      Get(m, "strategy", strategy, where);
      mc.strategy = ParseMetricStrategy(strategy);
      mc.judge = JudgeConfig::ForKind(JudgeKindFor(mc.strategy));
      Get(m, "backend", mc.backend, where);
      Get(m, "model", mc.model, where);
      Get(m, "batch_limit", mc.batch_limit, where);
      Get(m, "w", mc.slide.w, where);
      Get(m, "s", mc.slide.s, where);
      std::string weighting = "sentence_count";
      Get(m, "weighting", weighting, where);
      if (weighting == "sentence_count") {
        mc.slide.weighting = WindowWeighting::kSentenceCount;
      } else if (weighting == "uniform") {
        mc.slide.weighting = WindowWeighting::kUniform;
      } else {
        Fail(where + ": unknown window weighting '" + weighting + "'");
      }
      Get(m, "k", mc.context_k, where);
      if (m.contains("judge")) {
        const Json& jj = m["judge"];
        RejectUnknown(jj, {"max_attempts", "temperature_schedule", "max_output_tokens"}, where + " judge");
        Get(jj, "max_attempts", mc.judge.max_attempts, where);
        Get(jj, "temperature_schedule", mc.judge.temperature_schedule, where);
        Get(jj, "max_output_tokens", mc.judge.max_output_tokens, where);
      }
      Get(m, "fallback", mc.fallback, where);
      c.metrics.push_back(mc);
    }
  }

  if (j.contains("evaluators")) {
    if (!j["evaluators"].is_array()) Fail("evaluators must be an array");
    c.evaluators.clear();
    for (const Json& e : j["evaluators"]) {
      RejectUnknown(e, {"id", "backend", "model"}, "evaluator");
      EvaluatorConfig ec;
      Get(e, "id", ec.id, "evaluator");
      Get(e, "backend", ec.backend, "evaluator " + ec.id);
      Get(e, "model", ec.model, "evaluator " + ec.id);
      c.evaluators.push_back(ec);
    }
  }
  return c;
}

RunConfig RunConfig::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Fail(path + ": " + e.what());
  }
  return FromJson(j);
}

OJson RunConfig::ToJson() const {
  OJson j;
  j["corpus"] = corpus;
  j["inputs"] = inputs;
  j["prompts_dir"] = prompts_dir;
  OJson backends_json = OJson::object();
  for (const auto& [name, b] : backends) {
    OJson bj;
    bj["kind"] = KindName(b.kind);
    bj["url"] = b.url;
    bj["path"] = b.path;
    bj["credential_env"] = b.credential_env;
    bj["timeout_seconds"] = b.timeout_seconds;
    bj["max_batch"] = b.max_batch;
    backends_json[name] = bj;
  }
  j["backends"] = backends_json;
  OJson ts = OJson::array();
  for (const TranslatorConfig& t : translators) {
    OJson tj;
    tj["id"] = t.id;
    tj["backend"] = t.backend;
    tj["decoding"] = DecodingToJson(t.decoding);
    tj["budget"] = {{"alpha_a", t.budget.alpha_a}, {"alpha_m", t.budget.alpha_m},
                    {"ceiling", t.budget.ceiling}};
    ts.push_back(tj);
  }
  j["translators"] = ts;
  OJson ms = OJson::array();
  for (const MetricConfig& m : metrics) {
    OJson mj;
    mj["id"] = m.id;
    mj["strategy"] = MetricStrategyName(m.strategy);
    mj["backend"] = m.backend;
    if (IsLlmStrategy(m.strategy)) {
      mj["judge"] = {{"max_attempts", m.judge.max_attempts},
                     {"temperature_schedule", m.judge.temperature_schedule},
                     {"max_output_tokens", m.judge.max_output_tokens}};
    } else {
      mj["model"] = m.model;
      mj["batch_limit"] = m.batch_limit;
      if (m.strategy == MetricStrategy::kSlide) {
        mj["w"] = m.slide.w;
        mj["s"] = m.slide.s;
        mj["weighting"] =
            m.slide.weighting == WindowWeighting::kUniform ? "uniform" : "sentence_count";
      }
      if (m.strategy == MetricStrategy::kDocContext) mj["k"] = m.context_k;
    }
    mj["fallback"] = m.fallback;
    ms.push_back(mj);
  }
  j["metrics"] = ms;
  OJson es = OJson::array();
  for (const EvaluatorConfig& e : evaluators) {
    es.push_back(OJson{{"id", e.id}, {"backend", e.backend}, {"model", e.model}});
  }
  j["evaluators"] = es;
  j["pool_sizes"] = pool_sizes;
  j["bucket_edges"] = Edges();
  j["seed"] = seed;
  j["jobs"] = jobs;
  j["mix_paragraphs"] = mix_paragraphs;
  j["output_dir"] = output_dir;
  j["retry"] = {{"max_retries", retry.max_retries},
                {"initial_backoff_ms", retry.initial_backoff.count()},
                {"multiplier", retry.multiplier}};
  j["mock"] = {{"generate_seconds_per_candidate", mock.generate_seconds_per_candidate},
               {"qe_seconds_per_request", mock.qe_seconds_per_request},
               {"chat_seconds_per_call", mock.chat_seconds_per_call},
               {"evaluate_seconds_per_request", mock.evaluate_seconds_per_request},
               {"simulate", mock.simulate},
               {"chat_mode", mock.chat_mode}};
  return j;
}

const std::vector<int>& RunConfig::Edges() const {
  return bucket_edges.empty() ? DefaultBucketEdges() : bucket_edges;
}

void RunConfig::Validate() const {
  if (translators.empty()) Fail("no translators configured");
  if (metrics.empty()) Fail("no QE metrics configured");
  if (pool_sizes.empty()) Fail("no pool sizes configured");
  if (pool_sizes.front() < 1) Fail("pool sizes must be >= 1");
  for (size_t i = 1; i < pool_sizes.size(); ++i) {
    if (pool_sizes[i] <= pool_sizes[i - 1]) Fail("pool sizes must be strictly increasing");
  }
  if (std::find(pool_sizes.begin(), pool_sizes.end(), 1) == pool_sizes.end()) {
    Fail("pool sizes must include the baseline 1");
  }
  if (jobs < 0) Fail("jobs must be >= 0");
  if (retry.max_retries < 0 || retry.initial_backoff.count() < 0 || retry.multiplier < 1.0) {
    Fail("retry needs max_retries >= 0, initial_backoff_ms >= 0, multiplier >= 1");
  }
  const std::vector<int>& edges = Edges();
  if (edges.size() < 2) Fail("bucket edges need at least two entries");
  for (size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] <= edges[i - 1]) Fail("bucket edges must be strictly increasing");
  }
  if (mock.generate_seconds_per_candidate < 0 || mock.qe_seconds_per_request < 0 ||
      mock.chat_seconds_per_call < 0 || mock.evaluate_seconds_per_request < 0) {
    Fail("mock latencies must be >= 0");
  }
  if (mock.chat_mode != "hash" && mock.chat_mode != "always_fail") {
    Fail("mock chat_mode must be hash or always_fail");
  }

  for (const auto& [name, b] : backends) {
    if (b.url.empty()) Fail("backend " + name + " has no url");
    if (b.url.rfind("http://", 0) != 0) Fail("backend " + name + " url must start with http://");
    if (b.path.empty() || b.path.front() != '/') Fail("backend " + name + " path must start with /");
    if (b.timeout_seconds < 1) Fail("backend " + name + " timeout must be >= 1");
    if (b.max_batch < 1) Fail("backend " + name + " max_batch must be >= 1");
  }
  auto backend = [&](const std::string& name, BackendKind kind, const std::string& user) {
    const auto it = backends.find(name);
    if (name.empty()) Fail(user + " names no backend");
    if (it == backends.end()) Fail(user + " references undefined backend " + name);
    if (it->second.kind != kind) {
      Fail(user + " needs a " + KindName(kind) + " backend, " + name + " is a " +
           KindName(it->second.kind));
    }
  };

  std::set<std::string> ids;
  for (const TranslatorConfig& t : translators) {
    if (t.id.empty()) Fail("translator without id");
    if (!ids.insert("t:" + t.id).second) Fail("duplicate translator id " + t.id);
    backend(t.backend, BackendKind::kTranslator, "translator " + t.id);
    t.decoding.Validate();
    t.budget.Validate();
  }
  std::set<std::string> metric_ids;
  for (const MetricConfig& m : metrics) {
    if (m.id.empty()) Fail("metric without id");
    if (!metric_ids.insert(m.id).second) Fail("duplicate metric id " + m.id);
    if (IsLlmStrategy(m.strategy)) {
      backend(m.backend, BackendKind::kChat, "metric " + m.id);
      m.judge.Validate();
    } else {
      backend(m.backend, BackendKind::kScorer, "metric " + m.id);
      if (m.model.empty()) Fail("metric " + m.id + " names no model");
      if (m.batch_limit < 1) Fail("metric " + m.id + " batch_limit must be >= 1");
      if (m.slide.w < 1 || m.slide.s < 1) Fail("metric " + m.id + " needs w >= 1 and s >= 1");
      if (m.context_k < 0) Fail("metric " + m.id + " needs k >= 0");
    }
  }
  for (const MetricConfig& m : metrics) {
    if (m.fallback.empty()) continue;
    if (m.fallback == m.id) Fail("metric " + m.id + " cannot be its own fallback");
    if (!metric_ids.count(m.fallback)) {
      Fail("metric " + m.id + " falls back to unknown metric " + m.fallback);
    }
  }
  std::set<std::string> eval_ids;
  for (const EvaluatorConfig& e : evaluators) {
    if (e.id.empty()) Fail("evaluator without id");
    if (!eval_ids.insert(e.id).second) Fail("duplicate evaluator id " + e.id);
    backend(e.backend, BackendKind::kScorer, "evaluator " + e.id);
    if (e.model.empty()) Fail("evaluator " + e.id + " names no model");
  }
}

void RunConfig::SelectTranslators(const std::vector<std::string>& ids) {
  std::vector<TranslatorConfig> kept;
  for (const std::string& id : ids) {
    const auto it = std::find_if(translators.begin(), translators.end(),
                                 [&](const TranslatorConfig& t) { return t.id == id; });
    if (it == translators.end()) Fail("unknown translator " + id);
    kept.push_back(*it);
  }
  translators = std::move(kept);
}

void RunConfig::SelectMetrics(const std::vector<std::string>& ids) {
  auto find = [&](const std::string& id) {
    const auto it = std::find_if(metrics.begin(), metrics.end(),
                                 [&](const MetricConfig& m) { return m.id == id; });
    if (it == metrics.end()) Fail("unknown metric " + id);
    return *it;
  };
  std::vector<MetricConfig> kept;
  std::set<std::string> seen;
  for (const std::string& id : ids) {
    if (seen.insert(id).second) kept.push_back(find(id));
  }
  for (size_t i = 0; i < kept.size(); ++i) {
    const std::string fb = kept[i].fallback;
    if (!fb.empty() && seen.insert(fb).second) kept.push_back(find(fb));
  }
  metrics = std::move(kept);
}

BuiltGrid BuildGrid(const RunConfig& config, bool mock) {
  config.Validate();
  BuiltGrid grid;
  std::shared_ptr<const PromptSet> prompts;
  if (!config.prompts_dir.empty()) {
    prompts = std::make_shared<const PromptSet>(PromptSet::FromDirectory(config.prompts_dir));
  }
  std::map<std::string, std::shared_ptr<ScorerBackend>> scorers;
  std::map<std::string, std::shared_ptr<ChatBackend>> chats;
  std::set<std::string> urls;

  const MockConfig& mc = config.mock;
  auto endpoint = [&](const std::string& name) {
    const BackendConfig& b = config.backends.at(name);
    urls.insert(b.url);
    return HttpEndpoint{b.url, b.path, b.credential_env, b.timeout_seconds};
  };
  auto scorer = [&](const std::string& name, double per_request) -> std::shared_ptr<ScorerBackend> {
    if (mock) {
      MockScorer::Options o;
      o.latency = {0.0, per_request, mc.simulate};
      return std::make_shared<MockScorer>(o);
    }
    auto& slot = scorers[name];
    if (!slot) slot = std::make_shared<HttpScorerBackend>(endpoint(name));
    return slot;
  };

  for (const TranslatorConfig& t : config.translators) {
    const BackendConfig& b = config.backends.at(t.backend);
    TranslatorSpec spec;
    spec.id = t.id;
    spec.decoding = t.decoding;
    spec.budget = t.budget;
    spec.retry = config.retry;
    if (mock) {
      MockTranslator::Options o;
      o.id = t.id;
      o.latency = {0.0, mc.generate_seconds_per_candidate, mc.simulate};
      o.max_batch = b.max_batch;
      spec.backend = std::make_shared<MockTranslator>(o);
    } else {
      BackendCapabilities caps;
      caps.max_batch = b.max_batch;
      spec.backend = std::make_shared<HttpTranslatorBackend>(endpoint(t.backend), caps);
    }
    grid.translators.push_back(std::move(spec));
  }

  for (const MetricConfig& m : config.metrics) {
    MetricSpec spec;
    spec.id = m.id;
    spec.strategy = m.strategy;
    spec.model = m.model;
    spec.batch_limit = m.batch_limit;
    spec.slide = m.slide;
    spec.context_k = m.context_k;
    spec.judge = m.judge;
    spec.judge.transport_retry = config.retry;
    spec.prompts = prompts;
    spec.fallback = m.fallback;
    spec.retry = config.retry;
    if (IsLlmStrategy(m.strategy)) {
      if (mock) {
        MockChat::Options o;
        o.latency = {mc.chat_seconds_per_call, 0.0, mc.simulate};
        if (mc.chat_mode == "always_fail") o.mode = MockChat::Mode::kAlwaysFail;
        spec.chat = std::make_shared<MockChat>(o);
      } else {
        auto& slot = chats[m.backend];
        if (!slot) slot = std::make_shared<HttpChatBackend>(endpoint(m.backend));
        spec.chat = slot;
      }
    } else {
      spec.scorer = scorer(m.backend, mc.qe_seconds_per_request);
    }
    grid.metrics.push_back(std::move(spec));
  }

  for (const EvaluatorConfig& e : config.evaluators) {
    grid.evaluators.push_back(
        {e.id, e.model, scorer(e.backend, mc.evaluate_seconds_per_request), config.retry});
  }
  grid.endpoints.assign(urls.begin(), urls.end());
  return grid;
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : ParseIdList(text)) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || used == 0) Fail("'" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) Fail("empty list");
  return out;
}

std::vector<std::string> ParseIdList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string trimmed(Trim(item));
    if (!trimmed.empty()) out.push_back(trimmed);
  }
  return out;
}

}  // namespace docrerank
