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

#include "docrerank/report.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "docrerank/errors.h"
#include "json.hpp"

namespace docrerank {
namespace {

using Json = nlohmann::ordered_json;

struct GroupKey {
  std::string metric;
  std::string translator;
  std::string bucket;
  auto operator<=>(const GroupKey&) const = default;
};

struct Accumulator {
  std::map<std::string, double> sums;
  std::map<std::string, int> counts;
  int n = 0;

  void Add(const ExperimentRecord& r) {
    ++n;
    for (const auto& [ev, v] : r.eval_scores) {
      sums[ev] += v;
      ++counts[ev];
    }
  }

  std::map<std::string, double> Means() const {
    std::map<std::string, double> out;
    for (const auto& [ev, s] : sums) out[ev] = s / counts.at(ev);
    return out;
  }
};

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  // Avoid "-0.000000" so equal deltas print identically.
  if (std::string(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<ReportRow> ComputeDeltas(const std::vector<ExperimentRecord>& records, GroupBy group) {
  std::map<GroupKey, std::map<int, Accumulator>> groups;
  for (const ExperimentRecord& r : records) {
    GroupKey key{r.metric_id, r.translator_id, kAllBuckets};
    if (group == GroupBy::kMetricBucket) key.translator = kAllTranslators;
    if (group != GroupBy::kMetricTranslator) {
      if (r.length_bucket.empty()) continue;  // outside the bucket edges
      key.bucket = r.length_bucket;
    }
    groups[key][r.pool_size].Add(r);
  }

  std::vector<ReportRow> rows;
  for (const auto& [key, by_pool] : groups) {
    const auto base_it = by_pool.find(1);
    if (base_it == by_pool.end()) {
      throw Error(ErrorCode::kMissingBaseline, "no pool-size-1 records for metric " + key.metric +
                                                   ", translator " + key.translator +
                                                   ", bucket " + key.bucket);
    }
    const std::map<std::string, double> base = base_it->second.Means();
    for (const auto& [pool, acc] : by_pool) {
      ReportRow row;
      row.metric_id = key.metric;
      row.translator_id = key.translator;
      row.bucket = key.bucket;
      row.pool_size = pool;
      row.mean = acc.Means();
      row.n = acc.n;
      for (const auto& [ev, m] : row.mean) {
        const auto b = base.find(ev);
        if (b == base.end()) {
          throw Error(ErrorCode::kMissingBaseline,
                      "no pool-size-1 " + ev + " scores for metric " + key.metric);
        }
        row.delta[ev] = m - b->second;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

double QeRatio(double qe, double generate) {
  const double total = qe + generate;
  return total > 0.0 ? qe / total : 0.0;
}

std::vector<RuntimeRow> MeasureRuntime(const std::vector<ExperimentRecord>& records) {
  struct Sums {
    double generate = 0.0, qe = 0.0, evaluate = 0.0;
    int n = 0;
  };
  using Key = std::tuple<std::string, std::string, int, std::string>;
  std::map<Key, Sums> sums;
  auto stage = [](const ExperimentRecord& r, const char* name) {
    const auto it = r.runtimes.find(name);
    return it == r.runtimes.end() ? 0.0 : it->second;
  };
  for (const ExperimentRecord& r : records) {
    for (const auto& [kind, id] : {std::pair<std::string, std::string>{"translator", r.translator_id},
                                   std::pair<std::string, std::string>{"metric", r.metric_id}}) {
      std::vector<std::string> buckets = {kAllBuckets};
      if (!r.length_bucket.empty()) buckets.push_back(r.length_bucket);
      for (const std::string& b : buckets) {
        Sums& s = sums[{kind, id, r.pool_size, b}];
        s.generate += stage(r, "generate");
        s.qe += stage(r, "qe");
        s.evaluate += stage(r, "evaluate");
        ++s.n;
      }
    }
  }
  std::vector<RuntimeRow> rows;
  for (const auto& [key, s] : sums) {
    RuntimeRow row;
    std::tie(row.kind, row.id, row.pool_size, row.bucket) = key;
    row.generate = s.generate / s.n;
    row.qe = s.qe / s.n;
    row.evaluate = s.evaluate / s.n;
    row.qe_ratio = QeRatio(row.qe, row.generate);
    row.n = s.n;
    rows.push_back(std::move(row));
  }
  return rows;
}

ReportInputs BuildReport(const std::vector<ExperimentRecord>& records) {
  ReportInputs out;
  out.by_translator = ComputeDeltas(records, GroupBy::kMetricTranslator);
  out.by_bucket = ComputeDeltas(records, GroupBy::kMetricBucket);
  out.runtime = MeasureRuntime(records);
  return out;
}

std::string RenderReportCsv(const std::vector<ReportRow>& rows) {
  std::set<int> pools;
  std::set<std::string> translators, evaluators, metrics;
  std::map<std::tuple<std::string, std::string, int>, const ReportRow*> cell;
  for (const ReportRow& r : rows) {
    pools.insert(r.pool_size);
    translators.insert(r.translator_id);
    metrics.insert(r.metric_id);
    for (const auto& [ev, _] : r.mean) evaluators.insert(ev);
    cell[{r.translator_id, r.metric_id, r.pool_size}] = &r;
  }

  std::ostringstream out;
  out << "translator,qe_metric,evaluator,stat";
  for (int p : pools) out << ',' << p;
  out << '\n';
  for (const std::string& t : translators) {
    for (const std::string& ev : evaluators) {
      for (const std::string& m : metrics) {
        for (const char* stat : {"mean", "delta"}) {
          out << CsvField(t) << ',' << CsvField(m) << ',' << CsvField(ev) << ',' << stat;
          for (int p : pools) {
            out << ',';
            const auto it = cell.find({t, m, p});
            if (it == cell.end()) continue;
            const auto& values = std::string(stat) == "mean" ? it->second->mean : it->second->delta;
            if (const auto v = values.find(ev); v != values.end()) out << Fixed(v->second);
          }
          out << '\n';
        }
      }
    }
  }
  return out.str();
}

std::string RenderPlotData(const ReportInputs& inputs) {
  Json pool_curves = Json::array();
  {
    std::map<std::pair<std::string, std::string>, std::vector<const ReportRow*>> series;
    for (const ReportRow& r : inputs.by_translator) series[{r.metric_id, r.translator_id}].push_back(&r);
    for (const auto& [key, rows] : series) {
      Json s;
      s["metric"] = key.first;
      s["translator"] = key.second;
      Json pools = Json::array(), ns = Json::array(), mean = Json::object(), delta = Json::object();
      for (const ReportRow* r : rows) {
        pools.push_back(r->pool_size);
        ns.push_back(r->n);
        for (const auto& [ev, v] : r->mean) mean[ev].push_back(v);
        for (const auto& [ev, v] : r->delta) delta[ev].push_back(v);
      }
      s["pool_sizes"] = pools;
      s["n"] = ns;
      s["mean"] = mean;
      s["delta"] = delta;
      pool_curves.push_back(std::move(s));
    }
  }

  Json length_curves = Json::array();
  {
    std::map<std::pair<std::string, int>, std::vector<const ReportRow*>> series;
    for (const ReportRow& r : inputs.by_bucket) series[{r.metric_id, r.pool_size}].push_back(&r);
    for (auto& [key, rows] : series) {
      std::sort(rows.begin(), rows.end(), [](const ReportRow* a, const ReportRow* b) {
        return std::stoi(a->bucket) < std::stoi(b->bucket);
      });
      Json s;
      s["metric"] = key.first;
      s["pool_size"] = key.second;
      Json buckets = Json::array(), ns = Json::array(), mean = Json::object(), delta = Json::object();
      for (const ReportRow* r : rows) {
        buckets.push_back(r->bucket);
        ns.push_back(r->n);
        for (const auto& [ev, v] : r->mean) mean[ev].push_back(v);
        for (const auto& [ev, v] : r->delta) delta[ev].push_back(v);
      }
      s["buckets"] = buckets;
      s["n"] = ns;
      s["mean"] = mean;
      s["delta"] = delta;
      length_curves.push_back(std::move(s));
    }
  }

  Json runtime_curves = Json::array();
  {
    std::map<std::tuple<std::string, std::string, std::string>, std::vector<const RuntimeRow*>> series;
    for (const RuntimeRow& r : inputs.runtime) series[{r.kind, r.id, r.bucket}].push_back(&r);
    for (const auto& [key, rows] : series) {
      Json s;
      s["kind"] = std::get<0>(key);
      s["id"] = std::get<1>(key);
      s["bucket"] = std::get<2>(key);
      Json pools = Json::array(), gen = Json::array(), qe = Json::array(), ev = Json::array(),
           ratio = Json::array(), ns = Json::array();
      for (const RuntimeRow* r : rows) {
        pools.push_back(r->pool_size);
        gen.push_back(r->generate);
        qe.push_back(r->qe);
        ev.push_back(r->evaluate);
        ratio.push_back(r->qe_ratio);
        ns.push_back(r->n);
      }
      s["pool_sizes"] = pools;
      s["generate"] = gen;
      s["qe"] = qe;
      s["evaluate"] = ev;
      s["qe_ratio"] = ratio;
      s["n"] = ns;
      runtime_curves.push_back(std::move(s));
    }
  }

  Json root;
  root["aggregation"] = "unweighted per-document mean";
  root["pool_size_curves"] = std::move(pool_curves);
  root["length_curves"] = std::move(length_curves);
  root["runtime_curves"] = std::move(runtime_curves);
  return root.dump(2) + "\n";
}

void WriteRecordsJsonl(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  for (const ExperimentRecord& r : records) {
    Json j;
    j["doc_id"] = r.doc_id;
    j["translator"] = r.translator_id;
    j["metric"] = r.metric_id;
    j["pool_size"] = r.pool_size;
    j["chosen_index"] = r.chosen_index;
    j["used_fallback"] = r.used_fallback;
    j["tie_broken"] = r.tie_broken;
    j["granularity"] = GranularityName(r.granularity);
    j["length_bucket"] = r.length_bucket;
    j["src_tokens"] = r.src_token_count;
    j["eval_scores"] = r.eval_scores;
    j["runtimes"] = r.runtimes;
    Json qe = Json::array();
    for (const auto& v : r.qe_scores) qe.push_back(v ? Json(*v) : Json(nullptr));
    j["qe_scores"] = std::move(qe);
    out << j.dump() << '\n';
  }
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path + " for writing");
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::kIoFailure, "failed writing " + path);
}

void EmitReport(const std::string& dir, const ReportInputs& inputs) {
  if (inputs.by_translator.empty()) throw Error(ErrorCode::kEmptyInput, "no report rows");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + dir + ": " + ec.message());
  const std::filesystem::path root(dir);
  WriteFile((root / "report.csv").string(), RenderReportCsv(inputs.by_translator));
  WriteFile((root / "plotdata.json").string(), RenderPlotData(inputs));
}

}  // namespace docrerank
