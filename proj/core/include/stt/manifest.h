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

#ifndef STT_MANIFEST_H_
#define STT_MANIFEST_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stt/alphabet.h"
#include "stt/text_norm.h"

namespace stt {

struct ManifestRow {
  std::string audio_ref;
  uint64_t size_bytes = 0;
  std::string transcript;
  std::optional<double> duration_seconds;
};

/// Corpus manifest: comma-separated with header
/// `wav_filename,wav_filesize,transcript` and an optional
/// `duration_seconds` column.
struct CorpusManifest {
  std::vector<ManifestRow> rows;
  bool has_durations = false;

  static CorpusManifest Read(std::istream& in);
  static CorpusManifest ReadFile(const std::string& path);
  void Write(std::ostream& out) const;
  void WriteFile(const std::string& path) const;
};

enum class RowStatus { kClean, kRepaired, kFailed };

struct RowReport {
  size_t row_index = 0;
  RowStatus status = RowStatus::kClean;
  std::string before;
  std::string after;                 // repaired rows only
  std::vector<std::pair<size_t, char32_t>> offenders;  // failed rows only
};

struct ValidationReport {
  size_t clean = 0;
  size_t repaired = 0;
  size_t failed = 0;
  /// Repaired and failed rows, in row order. Clean rows are counted only.
  std::vector<RowReport> rows;
};

/// Checks every transcript against the alphabet under the rules. Does not
/// modify the manifest.
ValidationReport ValidateManifest(const CorpusManifest& manifest,
                                  const Alphabet& alphabet,
                                  const NormalizationRules& rules);

struct RejectedRow {
  ManifestRow row;     // original, unnormalized
  std::string reason;
};

struct ConvertResult {
  CorpusManifest manifest;            // clean + repaired rows, normalized
  std::vector<RejectedRow> rejected;  // failed rows, never dropped
};

/// Column-name overrides for external corpus listings.
struct ConvertColumns {
  std::string audio = "wav_filename";
  std::string size = "wav_filesize";
  std::string transcript = "transcript";
};

/// Converts an external delimited listing into a normalized manifest.
/// Failed rows are diverted into `rejected`, never dropped. Throws
/// ManifestParseError when the header lacks the transcript column.
ConvertResult ConvertManifest(std::istream& source,
                              const NormalizationRules& rules,
                              const Alphabet& alphabet,
                              const ConvertColumns& columns = {});

/// Writes rejected rows as `wav_filename,wav_filesize,transcript,reason`.
void WriteRejects(std::ostream& out, const std::vector<RejectedRow>& rejected);

}  // namespace stt

#endif  // STT_MANIFEST_H_
