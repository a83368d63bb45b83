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

#ifndef DOCRERANK_REPORT_H_
#define DOCRERANK_REPORT_H_

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "docrerank/harness.h"

namespace docrerank {

enum class GroupBy { kMetricTranslator, kMetricBucket, kMetricTranslatorBucket };

inline constexpr const char* kAllTranslators = "*";
inline constexpr const char* kAllBuckets = "all";

struct ReportRow {
  std::string metric_id;
  std::string translator_id;  // kAllTranslators when pooled
  std::string bucket;         // kAllBuckets unless grouped by bucket
  int pool_size = 0;
  std::map<std::string, double> mean;   // per evaluator
  std::map<std::string, double> delta;  // mean minus the pool-size-1 mean
  int n = 0;
};

// Unweighted per-document means of each evaluator per (grouping, pool size),
// with deltas against pool size 1 of the same grouping. Rows are ordered by
// (metric, translator, bucket, pool size). Throws kMissingBaseline when a
// grouping has no pool-size-1 records.
std::vector<ReportRow> ComputeDeltas(const std::vector<ExperimentRecord>& records,
                                     GroupBy group = GroupBy::kMetricTranslator);

struct RuntimeRow {
  std::string kind;  // "translator" or "metric"
  std::string id;
  int pool_size = 0;
  std::string bucket;  // kAllBuckets or a length bucket label
  double generate = 0.0;
  double qe = 0.0;
  double evaluate = 0.0;
  double qe_ratio = 0.0;
  int n = 0;
};

// qe / (generate + qe), defined as 0 when both are 0.
double QeRatio(double qe, double generate);

// Mean stage seconds per (translator | metric) x pool size x bucket, with
// one "all" bucket row per (kind, id, pool size).
std::vector<RuntimeRow> MeasureRuntime(const std::vector<ExperimentRecord>& records);

struct ReportInputs {
  std::vector<ReportRow> by_translator;  // GroupBy::kMetricTranslator
  std::vector<ReportRow> by_bucket;      // GroupBy::kMetricBucket
  std::vector<RuntimeRow> runtime;
};

ReportInputs BuildReport(const std::vector<ExperimentRecord>& records);

// One block per (translator, evaluator): QE metric rows, a "mean" and a
// "delta" line each, pool sizes as columns. Fixed six-decimal values.
std::string RenderReportCsv(const std::vector<ReportRow>& rows);

// Score curves over pool size (per metric x translator) and over length
// bucket (per metric x pool size). Runtime curves over pool size.
std::string RenderPlotData(const ReportInputs& inputs);

// One JSON object per record, in record order.
void WriteRecordsJsonl(const std::vector<ExperimentRecord>& records, std::ostream& out);

// Writes report.csv and plotdata.json into `dir` (created if needed).
// Throws kEmptyInput without rows and kIoFailure on write errors.
void EmitReport(const std::string& dir, const ReportInputs& inputs);

// Writes `content` to `path`, throwing kIoFailure on any error.
void WriteFile(const std::string& path, const std::string& content);

}  // namespace docrerank

#endif  // DOCRERANK_REPORT_H_
