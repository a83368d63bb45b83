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

#ifndef DOCRERANK_DATASET_H_
#define DOCRERANK_DATASET_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "docrerank/text.h"

namespace docrerank {

enum class SegmentLevel { kSentence, kParagraph, kDocument };

const char* SegmentLevelName(SegmentLevel level);
SegmentLevel ParseSegmentLevel(const std::string& name);

// One segment of a WMT-style test set.
struct SourceRecord {
  std::string doc_id;
  int segment_index = 0;
  SegmentLevel level = SegmentLevel::kSentence;
  std::string src_text;
  std::string ref_text;
  Language src_lang = Language::kEnglish;
  Language tgt_lang = Language::kJapanese;
};

enum class Granularity { kFullDocument, kParagraph };

const char* GranularityName(Granularity g);

struct ExperimentDoc {
  std::string doc_id;
  Granularity granularity = Granularity::kFullDocument;
  Language src_lang = Language::kEnglish;
  Language tgt_lang = Language::kJapanese;
  std::string src_text;
  std::string ref_text;
  int src_token_count = 0;
  int src_sentence_count = 0;
  std::string length_bucket;  // "lo-hi", empty when outside the default edges
};

// Fills token/sentence counts and the default-edge bucket label.
ExperimentDoc MakeExperimentDoc(std::string doc_id, Granularity granularity, Language src_lang,
                                Language tgt_lang, std::string src_text, std::string ref_text);

// Record readers. Both formats carry the SourceRecord fields; TSV needs a
// header row naming the columns and escapes \n, \t and \\ inside texts.
// Errors: kMalformedInput, kMissingReference (names the doc_id).
std::vector<SourceRecord> ParseRecordsJsonl(std::istream& in);
std::vector<SourceRecord> ParseRecordsTsv(std::istream& in);
// Picks the format from the extension (.tsv, otherwise JSON lines).
std::vector<SourceRecord> ReadRecords(const std::string& path);

// Groups records by doc_id (output sorted by doc_id) and concatenates them
// in segment_index order. Adjacent sentence-level segments join with the
// language's sentence joiner (a space for English, nothing for Japanese);
// a paragraph or document-level segment on either side of a join gets a
// blank line.
std::vector<ExperimentDoc> MergeSegments(std::vector<SourceRecord> records);

// Splits full documents on blank lines into paragraph docs
// ("<doc_id>#p<i>"). Documents with a single paragraph, or whose source
// and reference paragraph counts differ, contribute nothing.
std::vector<ExperimentDoc> SplitParagraphs(const std::vector<ExperimentDoc>& docs);

// Seeded 50/50 sample: min(|docs|, |paragraphs|) of each, interleaved
// document, paragraph, document, ... Throws kEmptyInput.
std::vector<ExperimentDoc> BuildMix(const std::vector<ExperimentDoc>& docs,
                                    const std::vector<ExperimentDoc>& paragraphs, uint64_t seed);

const std::vector<int>& DefaultBucketEdges();

struct LengthBucket {
  int lo = 0;
  int hi = 0;

  std::string Label() const { return std::to_string(lo) + "-" + std::to_string(hi); }
  auto operator<=>(const LengthBucket&) const = default;
};

struct BucketedDocs {
  std::map<LengthBucket, std::vector<ExperimentDoc>> buckets;
  // Documents outside [edges.front(), edges.back()).
  std::vector<ExperimentDoc> excluded;
};

// Half-open buckets [edges[i], edges[i+1]) over src_token_count. Throws
// kInvalidEdges unless edges has >= 2 strictly increasing entries.
BucketedDocs BucketByLength(const std::vector<ExperimentDoc>& docs,
                            const std::vector<int>& edges = DefaultBucketEdges());

// Label of the bucket holding `tokens`, or "" when out of range.
std::string BucketLabel(int tokens, const std::vector<int>& edges = DefaultBucketEdges());

struct LanguagePairStats {
  size_t documents = 0;
  double mu_src = 0.0;  // mean source tokens
  double mu_tgt = 0.0;  // mean reference tokens
};

struct DatasetStats {
  size_t documents = 0;
  size_t full_documents = 0;
  size_t paragraphs = 0;
  double mean_src_sentences = 0.0;
  double mean_src_tokens = 0.0;
  std::map<std::string, LanguagePairStats> pairs;  // key "en-ja"
};

DatasetStats ComputeStats(const std::vector<ExperimentDoc>& docs);

void WriteCorpusJsonl(const std::vector<ExperimentDoc>& docs, std::ostream& out);
std::vector<ExperimentDoc> ReadCorpusJsonl(std::istream& in);
std::vector<ExperimentDoc> ReadCorpus(const std::string& path);

}  // namespace docrerank

#endif  // DOCRERANK_DATASET_H_
