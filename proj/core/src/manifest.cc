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

#include "stt/manifest.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

#include "stt/csv.h"
#include "stt/error.h"
#include "stt/utf8.h"

namespace stt {
namespace {

bool IsBlankRecord(const std::vector<std::string>& record) {
  return record.size() == 1 && record[0].empty();
}

int FindColumn(const std::vector<std::string>& header,
               const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1
                            : static_cast<int>(it - header.begin());
}

uint64_t ParseSize(const std::string& text, size_t line) {
  if (text.empty()) return 0;
  uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ManifestParseError(line, "bad size field: '" + text + "'");
  }
  return value;
}

double ParseDuration(const std::string& text, size_t line) {
  try {
    size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size() || value < 0) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ManifestParseError(line, "bad duration field: '" + text + "'");
  }
}

}  // namespace

CorpusManifest CorpusManifest::Read(std::istream& in) {
  CsvReader reader(in);
  auto header = reader.ReadRecord();
  if (!header || IsBlankRecord(*header)) {
    throw ManifestParseError(1, "missing manifest header");
  }
  int audio_col = FindColumn(*header, "wav_filename");
  int size_col = FindColumn(*header, "wav_filesize");
  int text_col = FindColumn(*header, "transcript");
  int dur_col = FindColumn(*header, "duration_seconds");
  if (audio_col < 0 || size_col < 0 || text_col < 0) {
    throw ManifestParseError(
        1, "header must contain wav_filename,wav_filesize,transcript");
  }

  CorpusManifest manifest;
  manifest.has_durations = dur_col >= 0;
  while (auto record = reader.ReadRecord()) {
    if (IsBlankRecord(*record)) continue;
    if (record->size() != header->size()) {
      throw ManifestParseError(reader.line(),
                               "expected " + std::to_string(header->size()) +
                                   " fields, got " +
                                   std::to_string(record->size()));
    }
    ManifestRow row;
    row.audio_ref = (*record)[audio_col];
    if (row.audio_ref.empty()) {
      throw ManifestParseError(reader.line(), "empty wav_filename");
    }
    row.size_bytes = ParseSize((*record)[size_col], reader.line());
    row.transcript = (*record)[text_col];
    if (dur_col >= 0 && !(*record)[dur_col].empty()) {
      row.duration_seconds = ParseDuration((*record)[dur_col], reader.line());
    }
    manifest.rows.push_back(std::move(row));
  }
  return manifest;
}

CorpusManifest CorpusManifest::ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest: " + path);
  return Read(in);
}

void CorpusManifest::Write(std::ostream& out) const {
  std::vector<std::string> header = {"wav_filename", "wav_filesize",
                                     "transcript"};
  if (has_durations) header.push_back("duration_seconds");
  WriteCsvRecord(out, header);
  for (const auto& row : rows) {
    std::vector<std::string> record = {row.audio_ref,
                                       std::to_string(row.size_bytes),
                                       row.transcript};
    if (has_durations) {
      record.push_back(row.duration_seconds
                           ? std::to_string(*row.duration_seconds)
                           : std::string());
    }
    WriteCsvRecord(out, record);
  }
}

void CorpusManifest::WriteFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest: " + path);
  Write(out);
  if (!out) throw IoError("failed writing manifest: " + path);
}

ValidationReport ValidateManifest(const CorpusManifest& manifest,
                                  const Alphabet& alphabet,
                                  const NormalizationRules& rules) {
  rules.Validate(alphabet);
  ValidationReport report;
  for (size_t i = 0; i < manifest.rows.size(); ++i) {
    const std::string& raw = manifest.rows[i].transcript;
    RowReport row;
    row.row_index = i;
    row.before = raw;
    try {
      std::string normalized = NormalizeText(raw, rules, alphabet);
      if (normalized == raw) {
        ++report.clean;
        continue;
      }
      row.status = RowStatus::kRepaired;
      row.after = std::move(normalized);
      ++report.repaired;
    } catch (const UnmappableCharacterError& e) {
      row.status = RowStatus::kFailed;
      row.offenders = e.offenders();
      ++report.failed;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

ConvertResult ConvertManifest(std::istream& source,
                              const NormalizationRules& rules,
                              const Alphabet& alphabet,
                              const ConvertColumns& columns) {
  rules.Validate(alphabet);
  CsvReader reader(source);
  auto header = reader.ReadRecord();
  if (!header || IsBlankRecord(*header)) {
    throw ManifestParseError(1, "missing source header");
  }
  int text_col = FindColumn(*header, columns.transcript);
  if (text_col < 0) {
    throw ManifestParseError(1, "source header lacks transcript column '" +
                                    columns.transcript + "'");
  }
  int audio_col = FindColumn(*header, columns.audio);
  int size_col = FindColumn(*header, columns.size);
  int dur_col = FindColumn(*header, "duration_seconds");

  ConvertResult result;
  result.manifest.has_durations = dur_col >= 0;
  size_t row_index = 0;
  while (auto record = reader.ReadRecord()) {
    if (IsBlankRecord(*record)) continue;
    if (record->size() != header->size()) {
      throw ManifestParseError(reader.line(),
                               "expected " + std::to_string(header->size()) +
                                   " fields, got " +
                                   std::to_string(record->size()));
    }
    ManifestRow row;
    row.audio_ref = audio_col >= 0 ? (*record)[audio_col]
                                   : "row-" + std::to_string(row_index);
    if (row.audio_ref.empty()) {
      throw ManifestParseError(reader.line(), "empty audio reference");
    }
    row.size_bytes =
        size_col >= 0 ? ParseSize((*record)[size_col], reader.line()) : 0;
    row.transcript = (*record)[text_col];
    if (dur_col >= 0 && !(*record)[dur_col].empty()) {
      row.duration_seconds = ParseDuration((*record)[dur_col], reader.line());
    }
    try {
      row.transcript = NormalizeText(row.transcript, rules, alphabet);
      result.manifest.rows.push_back(std::move(row));
    } catch (const UnmappableCharacterError& e) {
      result.rejected.push_back({std::move(row), e.what()});
    }
    ++row_index;
  }
  return result;
}

void WriteRejects(std::ostream& out,
                  const std::vector<RejectedRow>& rejected) {
  WriteCsvRecord(out, {"wav_filename", "wav_filesize", "transcript", "reason"});
  for (const auto& reject : rejected) {
    WriteCsvRecord(out, {reject.row.audio_ref,
                         std::to_string(reject.row.size_bytes),
                         reject.row.transcript, reject.reason});
  }
}

}  // namespace stt
