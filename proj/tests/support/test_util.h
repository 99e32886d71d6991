// Copyright (c) 2026 The sttkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STT_TESTS_SUPPORT_TEST_UTIL_H_
#define STT_TESTS_SUPPORT_TEST_UTIL_H_

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "stt/alphabet.h"
#include "stt/logits.h"

namespace stt::testing {

/// Self-deleting scratch directory under the system temp path.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0; attempt < 100; ++attempt) {
      auto candidate =
          base / ("stt_test_" + std::to_string(std::random_device{}()));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("cannot create temp directory");
  }
  ~TempDir() {
    if (path_.empty()) return;
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  TempDir(TempDir&& other) noexcept : path_(std::move(other.path_)) {
    other.path_.clear();
  }

  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// A tiny test alphabet: space plus a few Cyrillic letters.
inline Alphabet MakeTestAlphabet(int letters = 3) {
  std::vector<char32_t> labels = {U' '};
  static constexpr char32_t kLetters[] = {U'а', U'б', U'в', U'г', U'д',
                                          U'е', U'ж', U'з'};
  for (int i = 0; i < letters; ++i) labels.push_back(kLetters[i]);
  return Alphabet(std::move(labels));
}

/// Log-normalized random logits with bounded dynamic range, so per-frame
/// candidate pruning can never fire and exhaustive enumeration stays exact.
inline LogitMatrix RandomLogits(std::mt19937_64& rng, uint32_t frames,
                                uint32_t classes) {
  LogitMatrix m(frames, classes);
  for (uint32_t t = 0; t < frames; ++t) {
    std::vector<double> row(classes);
    double max = -1e9;
    for (auto& v : row) {
      // uniform in [-3, 3): spread 6 < the 9.21 pruning margin
      v = -3.0 + 6.0 * (double(rng() >> 11) * 0x1.0p-53);
      max = std::max(max, v);
    }
    double sum = 0.0;
    for (double v : row) sum += std::exp(v - max);
    double log_norm = max + std::log(sum);
    for (uint32_t c = 0; c < classes; ++c) {
      m.Set(t, c, static_cast<float>(row[c] - log_norm));
    }
  }
  return m;
}

inline std::string RepoPath(const std::string& relative) {
#ifdef STT_TEST_SOURCE_DIR
  return std::string(STT_TEST_SOURCE_DIR) + "/" + relative;
#else
  return relative;
#endif
}

}  // namespace stt::testing

#endif  // STT_TESTS_SUPPORT_TEST_UTIL_H_
