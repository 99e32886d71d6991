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

#include "stt/edit_distance.h"

#include "stt/error.h"
#include "stt/ngram_counts.h"
#include "stt/utf8.h"

namespace stt {
namespace {

std::vector<char32_t> CerScalars(const std::string& text, bool count_spaces) {
  std::vector<char32_t> cps = Utf8Decode(text);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (IsWhitespace(cp)) {
      pending_space = true;
      continue;
    }
    if (pending_space && count_spaces && !out.empty()) out.push_back(U' ');
    pending_space = false;
    out.push_back(cp);
  }
  return out;
}

}  // namespace

template <typename T>
EditCounts EditDistance(const std::vector<T>& a, const std::vector<T>& b) {
  const size_t m = a.size();
  const size_t n = b.size();
  // Full DP matrix with backtrace; desk-scale inputs keep this cheap.
  std::vector<std::vector<uint32_t>> dp(m + 1, std::vector<uint32_t>(n + 1));
  for (size_t i = 0; i <= m; ++i) dp[i][0] = static_cast<uint32_t>(i);
  for (size_t j = 0; j <= n; ++j) dp[0][j] = static_cast<uint32_t>(j);
  for (size_t i = 1; i <= m; ++i) {
    for (size_t j = 1; j <= n; ++j) {
      uint32_t sub = dp[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      uint32_t del = dp[i - 1][j] + 1;
      uint32_t ins = dp[i][j - 1] + 1;
      dp[i][j] = std::min({sub, del, ins});
    }
  }

  EditCounts counts;
  counts.distance = dp[m][n];
  size_t i = m, j = n;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        dp[i][j] == dp[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)) {
      if (a[i - 1] != b[j - 1]) ++counts.substitutions;
      --i;
      --j;
    } else if (i > 0 && dp[i][j] == dp[i - 1][j] + 1) {
      ++counts.deletions;
      --i;
    } else {
      ++counts.insertions;
      --j;
    }
  }
  return counts;
}

template EditCounts EditDistance<std::string>(const std::vector<std::string>&,
                                              const std::vector<std::string>&);
template EditCounts EditDistance<char32_t>(const std::vector<char32_t>&,
                                           const std::vector<char32_t>&);

std::pair<EditCounts, uint64_t> WordEdits(const std::string& reference,
                                          const std::string& hypothesis) {
  std::vector<std::string> ref_words = SplitTokens(reference);
  std::vector<std::string> hyp_words = SplitTokens(hypothesis);
  return {EditDistance(ref_words, hyp_words), ref_words.size()};
}

std::pair<EditCounts, uint64_t> CharEdits(const std::string& reference,
                                          const std::string& hypothesis,
                                          bool count_spaces) {
  std::vector<char32_t> ref_chars = CerScalars(reference, count_spaces);
  std::vector<char32_t> hyp_chars = CerScalars(hypothesis, count_spaces);
  return {EditDistance(ref_chars, hyp_chars), ref_chars.size()};
}

double Wer(const std::string& reference, const std::string& hypothesis) {
  auto [counts, ref_len] = WordEdits(reference, hypothesis);
  if (ref_len == 0) {
    throw EmptyReferenceError("WER is undefined for an empty reference");
  }
  return 100.0 * static_cast<double>(counts.distance) /
         static_cast<double>(ref_len);
}

double Cer(const std::string& reference, const std::string& hypothesis,
           bool count_spaces) {
  auto [counts, ref_len] = CharEdits(reference, hypothesis, count_spaces);
  if (ref_len == 0) {
    throw EmptyReferenceError("CER is undefined for an empty reference");
  }
  return 100.0 * static_cast<double>(counts.distance) /
         static_cast<double>(ref_len);
}

}  // namespace stt
