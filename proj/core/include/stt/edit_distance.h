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

#ifndef STT_EDIT_DISTANCE_H_
#define STT_EDIT_DISTANCE_H_

#include <cstdint>
#include <string>
#include <vector>

namespace stt {

struct EditCounts {
  uint64_t distance = 0;
  uint64_t substitutions = 0;
  uint64_t insertions = 0;  // present in b, absent in a
  uint64_t deletions = 0;   // present in a, absent in b
};

/// Unit-cost Levenshtein distance with an operation breakdown;
/// distance == substitutions + insertions + deletions. Ambiguous minimal
/// scripts resolve deterministically (substitution preferred, then
/// deletion, then insertion during backtrace).
template <typename T>
EditCounts EditDistance(const std::vector<T>& a, const std::vector<T>& b);

extern template EditCounts EditDistance<std::string>(
    const std::vector<std::string>&, const std::vector<std::string>&);
extern template EditCounts EditDistance<char32_t>(
    const std::vector<char32_t>&, const std::vector<char32_t>&);

/// WER as a percentage over whitespace tokens of the reference. Throws
/// EmptyReferenceError when the reference has no tokens.
double Wer(const std::string& reference, const std::string& hypothesis);

/// CER as a percentage over unicode scalars; whitespace runs collapse to a
/// single counted space unless `count_spaces` is false, which drops them.
double Cer(const std::string& reference, const std::string& hypothesis,
           bool count_spaces = true);

/// Word-level edit counts with the reference token count, the building
/// block for micro-averaged corpus WER.
std::pair<EditCounts, uint64_t> WordEdits(const std::string& reference,
                                          const std::string& hypothesis);
std::pair<EditCounts, uint64_t> CharEdits(const std::string& reference,
                                          const std::string& hypothesis,
                                          bool count_spaces = true);

}  // namespace stt

#endif  // STT_EDIT_DISTANCE_H_
