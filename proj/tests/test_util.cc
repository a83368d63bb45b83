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

#include "test_util.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace docrerank::testing {

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  const auto base = std::filesystem::temp_directory_path();
  for (;;) {
    const auto candidate = base / ("docrerank-test-" + std::to_string(::getpid()) + "-" +
                                   std::to_string(counter.fetch_add(1)));
    if (std::filesystem::create_directory(candidate)) {
      path_ = candidate.string();
      return;
    }
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string TempDir::File(const std::string& name) const {
  return (std::filesystem::path(path_) / name).string();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string TestData(const std::string& name) { return std::string(DOCRERANK_TEST_DATA) + "/" + name; }

std::vector<std::string> EnglishSentences(size_t n, const std::string& tag) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back("Sentence " + tag + std::to_string(i) + " ends here.");
  return out;
}

std::vector<std::string> JapaneseSentences(size_t n, const std::string& tag) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(tag + std::to_string(i) + "番目です。");
  return out;
}

}  // namespace docrerank::testing
