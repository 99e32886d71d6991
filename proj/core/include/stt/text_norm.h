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

#ifndef STT_TEXT_NORM_H_
#define STT_TEXT_NORM_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stt/alphabet.h"

namespace stt {

/// Transcript normalization rules: optional case folding, a confusable map
/// repairing lookalike scalars (e.g. Latin schwa onto its Cyrillic letter),
/// and a strip set of punctuation/symbols removed outright.
struct NormalizationRules {
  std::map<char32_t, char32_t> confusable_map;
  std::set<char32_t> strip_set;
  bool case_fold = true;
  bool collapse_whitespace = true;

  /// Parses the rules file format: tab-separated SOURCE_HEX<TAB>TARGET_HEX
  /// mapping lines, `strip HEX` lines, and directive lines
  /// `case_fold true|false`, `collapse_whitespace true|false`.
  /// '#'-prefixed comments and blank lines are ignored.
  static NormalizationRules FromText(const std::string& file_bytes);
  static NormalizationRules FromFile(const std::string& path);

  /// Rules shipped with the toolkit for Cyrillic Kazakh.
  static NormalizationRules Defaults();

  /// Checks the rules against the alphabet: every mapping target must be an
  /// alphabet label or whitespace, the map must be acyclic (no target is
  /// itself a mapped source), and the strip set must not remove labels.
  /// Throws InvalidArgumentError on a violation.
  void Validate(const Alphabet& alphabet) const;
};

/// Normalizes raw text to alphabet-pure form: case fold, confusable repair,
/// strip, whitespace collapse, trim. Output contains only alphabet labels
/// and single spaces. Throws UnmappableCharacterError listing every scalar
/// (with its codepoint index in `raw`) that none of the rules cover.
std::string NormalizeText(const std::string& raw,
                          const NormalizationRules& rules,
                          const Alphabet& alphabet);

/// Splits text into sentences after runs of sentence-final punctuation
/// (. ! ? and U+2026) followed by whitespace or end of input. Pieces are
/// trimmed; whitespace-only pieces are dropped.
std::vector<std::string> SegmentSentences(const std::string& raw);

}  // namespace stt

#endif  // STT_TEXT_NORM_H_
