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

#include "docrerank/dataset.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "docrerank/errors.h"
#include "docrerank/rng.h"
#include "docrerank/segmentation.h"

namespace docrerank {
namespace {

using nlohmann::json;

constexpr std::string_view kParagraphBreak = "\n\n";

std::string Unescape(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (size_t i = 0; i < field.size(); ++i) {
    if (field[i] == '\\' && i + 1 < field.size()) {
      const char next = field[i + 1];
      if (next == 'n') { out += '\n'; ++i; continue; }
      if (next == 't') { out += '\t'; ++i; continue; }
      if (next == '\\') { out += '\\'; ++i; continue; }
    }
    out += field[i];
  }
  return out;
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::vector<std::string> SplitBlankLines(const std::string& text) {
  std::vector<std::string> paragraphs;
  std::istringstream in(text);
  std::string line;
  std::string current;
  bool have_line = false;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) {
      if (have_line) paragraphs.push_back(current);
      current.clear();
      have_line = false;
      continue;
    }
    if (have_line) current += '\n';
    current += line;
    have_line = true;
  }
  if (have_line) paragraphs.push_back(current);
  return paragraphs;
}

void CheckRecord(const SourceRecord& r) {
  if (r.doc_id.empty()) throw Error(ErrorCode::kMalformedInput, "record without doc_id");
  if (r.src_lang == r.tgt_lang) {
    throw Error(ErrorCode::kUnsupportedLanguage,
                "doc " + r.doc_id + ": source and target language are both " +
                    LanguageCode(r.src_lang));
  }
  if (Trim(r.ref_text).empty()) {
    throw Error(ErrorCode::kMissingReference,
                "doc " + r.doc_id + " segment " + std::to_string(r.segment_index) +
                    " has no reference");
  }
}

std::string Joiner(const SourceRecord& prev, const SourceRecord& next, Language lang) {
  if (prev.level == SegmentLevel::kSentence && next.level == SegmentLevel::kSentence) {
    return std::string(SentenceJoiner(lang));
  }
  return std::string(kParagraphBreak);
}

json DocToJson(const ExperimentDoc& d) {
  return {{"doc_id", d.doc_id},
          {"granularity", GranularityName(d.granularity)},
          {"src_lang", LanguageCode(d.src_lang)},
          {"tgt_lang", LanguageCode(d.tgt_lang)},
          {"src_text", d.src_text},
          {"ref_text", d.ref_text},
          {"src_token_count", d.src_token_count},
          {"src_sentence_count", d.src_sentence_count},
          {"length_bucket", d.length_bucket}};
}

}  // namespace

const char* SegmentLevelName(SegmentLevel level) {
  switch (level) {
    case SegmentLevel::kSentence: return "sentence";
    case SegmentLevel::kParagraph: return "paragraph";
    case SegmentLevel::kDocument: return "document";
  }
  return "sentence";
}

SegmentLevel ParseSegmentLevel(const std::string& name) {
  if (name == "sentence") return SegmentLevel::kSentence;
  if (name == "paragraph") return SegmentLevel::kParagraph;
  if (name == "document") return SegmentLevel::kDocument;
  throw Error(ErrorCode::kMalformedInput, "unknown segment level '" + name + "'");
}

const char* GranularityName(Granularity g) {
  return g == Granularity::kParagraph ? "paragraph" : "full_document";
}

ExperimentDoc MakeExperimentDoc(std::string doc_id, Granularity granularity, Language src_lang,
                                Language tgt_lang, std::string src_text, std::string ref_text) {
  ExperimentDoc d;
  d.doc_id = std::move(doc_id);
  d.granularity = granularity;
  d.src_lang = src_lang;
  d.tgt_lang = tgt_lang;
  d.src_token_count = std::max<int>(1, static_cast<int>(EstimateTokens(src_text, src_lang)));
  d.src_sentence_count = std::max<int>(1, static_cast<int>(Segment(src_text, src_lang).size()));
  d.length_bucket = BucketLabel(d.src_token_count);
  d.src_text = std::move(src_text);
  d.ref_text = std::move(ref_text);
  return d;
}

std::vector<SourceRecord> ParseRecordsJsonl(std::istream& in) {
  std::vector<SourceRecord> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedInput, "line " + std::to_string(line_no) + ": " + e.what());
    }
    SourceRecord r;
    try {
      r.doc_id = j.at("doc_id").get<std::string>();
      if (!j.contains("ref_text")) {
        throw Error(ErrorCode::kMissingReference, "doc " + r.doc_id + " has no ref_text field");
      }
      r.segment_index = j.value("segment_index", 0);
      r.level = ParseSegmentLevel(j.value("level", std::string("sentence")));
      r.src_text = j.at("src_text").get<std::string>();
      r.ref_text = j.at("ref_text").get<std::string>();
      r.src_lang = ParseLanguage(j.at("src_lang").get<std::string>());
      r.tgt_lang = ParseLanguage(j.at("tgt_lang").get<std::string>());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedInput, "line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SourceRecord> ParseRecordsTsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = SplitTabs(line);
  auto column = [&](const std::string& name) -> long {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : it - header.begin();
  };
  for (const char* required : {"doc_id", "src_lang", "tgt_lang", "src_text"}) {
    if (column(required) < 0) {
      throw Error(ErrorCode::kMalformedInput, std::string("TSV header lacks column ") + required);
    }
  }
  const long ref_col = column("ref_text");
  const long idx_col = column("segment_index");
  const long level_col = column("level");

  std::vector<SourceRecord> out;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const std::vector<std::string> f = SplitTabs(line);
    auto field = [&](long col) -> std::string {
      return col >= 0 && static_cast<size_t>(col) < f.size() ? f[static_cast<size_t>(col)] : "";
    };
    SourceRecord r;
    r.doc_id = field(column("doc_id"));
    if (ref_col < 0 || static_cast<size_t>(ref_col) >= f.size()) {
      throw Error(ErrorCode::kMissingReference, "doc " + r.doc_id + " (line " +
                                                    std::to_string(line_no) +
                                                    ") has no reference column");
    }
    try {
      r.segment_index = idx_col >= 0 ? std::stoi(field(idx_col)) : static_cast<int>(out.size());
    } catch (const std::exception&) {
      throw Error(ErrorCode::kMalformedInput, "line " + std::to_string(line_no) +
                                                  ": bad segment_index '" + field(idx_col) + "'");
    }
    r.level = level_col >= 0 ? ParseSegmentLevel(field(level_col)) : SegmentLevel::kSentence;
    r.src_lang = ParseLanguage(field(column("src_lang")));
    r.tgt_lang = ParseLanguage(field(column("tgt_lang")));
    r.src_text = Unescape(field(column("src_text")));
    r.ref_text = Unescape(field(ref_col));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SourceRecord> ReadRecords(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  const bool tsv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0;
  return tsv ? ParseRecordsTsv(in) : ParseRecordsJsonl(in);
}

std::vector<ExperimentDoc> MergeSegments(std::vector<SourceRecord> records) {
  for (const SourceRecord& r : records) CheckRecord(r);
  std::stable_sort(records.begin(), records.end(), [](const SourceRecord& a, const SourceRecord& b) {
    if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
    return a.segment_index < b.segment_index;
  });

  std::vector<ExperimentDoc> docs;
  for (size_t begin = 0; begin < records.size();) {
    size_t end = begin + 1;
    while (end < records.size() && records[end].doc_id == records[begin].doc_id) ++end;
    const SourceRecord& first = records[begin];
    std::string src = first.src_text;
    std::string ref = first.ref_text;
    for (size_t i = begin + 1; i < end; ++i) {
      const SourceRecord& prev = records[i - 1];
      const SourceRecord& cur = records[i];
      if (cur.segment_index == prev.segment_index) {
        throw Error(ErrorCode::kMalformedInput, "doc " + cur.doc_id + " repeats segment " +
                                                    std::to_string(cur.segment_index));
      }
      if (cur.src_lang != first.src_lang || cur.tgt_lang != first.tgt_lang) {
        throw Error(ErrorCode::kMalformedInput, "doc " + cur.doc_id + " mixes language pairs");
      }
      src += Joiner(prev, cur, first.src_lang) + cur.src_text;
      ref += Joiner(prev, cur, first.tgt_lang) + cur.ref_text;
    }
    docs.push_back(MakeExperimentDoc(first.doc_id, Granularity::kFullDocument, first.src_lang,
                                     first.tgt_lang, std::move(src), std::move(ref)));
    begin = end;
  }
  return docs;
}

std::vector<ExperimentDoc> SplitParagraphs(const std::vector<ExperimentDoc>& docs) {
  std::vector<ExperimentDoc> out;
  for (const ExperimentDoc& d : docs) {
    const std::vector<std::string> src = SplitBlankLines(d.src_text);
    const std::vector<std::string> ref = SplitBlankLines(d.ref_text);
    if (src.size() < 2 || src.size() != ref.size()) continue;
    for (size_t i = 0; i < src.size(); ++i) {
      out.push_back(MakeExperimentDoc(d.doc_id + "#p" + std::to_string(i), Granularity::kParagraph,
                                      d.src_lang, d.tgt_lang, src[i], ref[i]));
    }
  }
  return out;
}

std::vector<ExperimentDoc> BuildMix(const std::vector<ExperimentDoc>& docs,
                                    const std::vector<ExperimentDoc>& paragraphs, uint64_t seed) {
  if (docs.empty() || paragraphs.empty()) {
    throw Error(ErrorCode::kEmptyInput, "the document/paragraph mix needs both kinds of input");
  }
  const size_t k = std::min(docs.size(), paragraphs.size());
  auto sample = [k](size_t n, uint64_t stream_seed) {
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    SplitMix64 rng(stream_seed);
    for (size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.UniformIndex(i)]);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  const std::vector<size_t> doc_idx = sample(docs.size(), DeriveSeed(seed, "mix:documents"));
  const std::vector<size_t> par_idx = sample(paragraphs.size(), DeriveSeed(seed, "mix:paragraphs"));
  std::vector<ExperimentDoc> mix;
  mix.reserve(2 * k);
  for (size_t i = 0; i < k; ++i) {
    mix.push_back(docs[doc_idx[i]]);
    mix.push_back(paragraphs[par_idx[i]]);
  }
  return mix;
}

const std::vector<int>& DefaultBucketEdges() {
  static const std::vector<int> kEdges = {0, 32, 64, 128, 256, 512, 1024};
  return kEdges;
}

namespace {

void CheckEdges(const std::vector<int>& edges) {
  if (edges.size() < 2) throw Error(ErrorCode::kInvalidEdges, "need at least two bucket edges");
  for (size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] <= edges[i - 1]) {
      throw Error(ErrorCode::kInvalidEdges, "bucket edges must be strictly increasing");
    }
  }
}

// Index i of the bucket [edges[i], edges[i+1]) holding tokens, or -1.
long FindBucket(int tokens, const std::vector<int>& edges) {
  if (tokens < edges.front() || tokens >= edges.back()) return -1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), tokens);
  return (it - edges.begin()) - 1;
}

}  // namespace

BucketedDocs BucketByLength(const std::vector<ExperimentDoc>& docs, const std::vector<int>& edges) {
  CheckEdges(edges);
  BucketedDocs out;
  for (const ExperimentDoc& d : docs) {
    const long i = FindBucket(d.src_token_count, edges);
    if (i < 0) {
      out.excluded.push_back(d);
      continue;
    }
    const size_t u = static_cast<size_t>(i);
    out.buckets[LengthBucket{edges[u], edges[u + 1]}].push_back(d);
  }
  return out;
}

std::string BucketLabel(int tokens, const std::vector<int>& edges) {
  CheckEdges(edges);
  const long i = FindBucket(tokens, edges);
  if (i < 0) return "";
  const size_t u = static_cast<size_t>(i);
  return LengthBucket{edges[u], edges[u + 1]}.Label();
}

DatasetStats ComputeStats(const std::vector<ExperimentDoc>& docs) {
  DatasetStats stats;
  stats.documents = docs.size();
  if (docs.empty()) return stats;
  double sentences = 0.0;
  double tokens = 0.0;
  std::map<std::string, std::pair<double, double>> sums;
  for (const ExperimentDoc& d : docs) {
    sentences += d.src_sentence_count;
    tokens += d.src_token_count;
    (d.granularity == Granularity::kParagraph ? stats.paragraphs : stats.full_documents)++;
    const std::string key = std::string(LanguageCode(d.src_lang)) + "-" + LanguageCode(d.tgt_lang);
    LanguagePairStats& pair = stats.pairs[key];
    ++pair.documents;
    sums[key].first += d.src_token_count;
    sums[key].second += static_cast<double>(EstimateTokens(d.ref_text, d.tgt_lang));
  }
  stats.mean_src_sentences = sentences / static_cast<double>(docs.size());
  stats.mean_src_tokens = tokens / static_cast<double>(docs.size());
  for (auto& [key, pair] : stats.pairs) {
    pair.mu_src = sums[key].first / static_cast<double>(pair.documents);
    pair.mu_tgt = sums[key].second / static_cast<double>(pair.documents);
  }
  return stats;
}

void WriteCorpusJsonl(const std::vector<ExperimentDoc>& docs, std::ostream& out) {
  for (const ExperimentDoc& d : docs) out << DocToJson(d).dump() << '\n';
}

std::vector<ExperimentDoc> ReadCorpusJsonl(std::istream& in) {
  std::vector<ExperimentDoc> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      ExperimentDoc d;
      d.doc_id = j.at("doc_id").get<std::string>();
      d.granularity = j.value("granularity", std::string("full_document")) == "paragraph"
                          ? Granularity::kParagraph
                          : Granularity::kFullDocument;
      d.src_lang = ParseLanguage(j.at("src_lang").get<std::string>());
      d.tgt_lang = ParseLanguage(j.at("tgt_lang").get<std::string>());
      d.src_text = j.at("src_text").get<std::string>();
      d.ref_text = j.at("ref_text").get<std::string>();
      d.src_token_count = j.at("src_token_count").get<int>();
      d.src_sentence_count = j.at("src_sentence_count").get<int>();
      d.length_bucket = j.value("length_bucket", std::string());
      out.push_back(std::move(d));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedInput, "corpus line " + std::to_string(line_no) + ": " +
                                                  e.what());
    }
  }
  return out;
}

std::vector<ExperimentDoc> ReadCorpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  return ReadCorpusJsonl(in);
}

}  // namespace docrerank
