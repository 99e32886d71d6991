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

#include "stt/eval.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

#include "stt/csv.h"
#include "stt/edit_distance.h"
#include "stt/error.h"

namespace stt {
namespace {

bool IsBlankRecord(const std::vector<std::string>& record) {
  return record.size() == 1 && record[0].empty();
}

int FindColumn(const std::vector<std::string>& header,
               const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

std::string JoinPath(const std::string& dir, const std::string& name) {
  if (dir.empty() || name.empty() || name[0] == '/') return name;
  if (dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

std::string FingerprintHex(uint64_t fingerprint) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fingerprint));
  return buf;
}

}  // namespace

CorpusManifest ReadEvalManifest(std::istream& in) {
  CsvReader reader(in);
  auto header = reader.ReadRecord();
  if (!header || IsBlankRecord(*header)) {
    throw ManifestParseError(1, "missing eval manifest header");
  }
  int logit_col = FindColumn(*header, "logit_filename");
  int audio_col = FindColumn(*header, "audio_seconds");
  int text_col = FindColumn(*header, "transcript");
  if (logit_col < 0 || text_col < 0) {
    throw ManifestParseError(
        1, "header must contain logit_filename and transcript");
  }
  CorpusManifest manifest;
  manifest.has_durations = audio_col >= 0;
  while (auto record = reader.ReadRecord()) {
    if (IsBlankRecord(*record)) continue;
    if (record->size() != header->size()) {
      throw ManifestParseError(reader.line(),
                               "expected " + std::to_string(header->size()) +
                                   " fields, got " +
                                   std::to_string(record->size()));
    }
    ManifestRow row;
    row.audio_ref = (*record)[logit_col];
    if (row.audio_ref.empty()) {
      throw ManifestParseError(reader.line(), "empty logit_filename");
    }
    row.transcript = (*record)[text_col];
    if (audio_col >= 0 && !(*record)[audio_col].empty()) {
      try {
        size_t used = 0;
        double value = std::stod((*record)[audio_col], &used);
        if (used != (*record)[audio_col].size() || value < 0) {
          throw std::invalid_argument("");
        }
        row.duration_seconds = value;
      } catch (const std::exception&) {
        throw ManifestParseError(reader.line(), "bad audio_seconds field");
      }
    }
    manifest.rows.push_back(std::move(row));
  }
  return manifest;
}

CorpusManifest ReadEvalManifestFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open eval manifest: " + path);
  return ReadEvalManifest(in);
}

EvalReport Evaluate(const CorpusManifest& manifest, const Alphabet& alphabet,
                    const Scorer* scorer, const EvalOptions& options) {
  if (options.workers < 1) {
    throw InvalidArgumentError("worker count must be >= 1");
  }
  EvalReport report;
  report.worker_count = options.workers;
  report.config.label = options.label;
  report.config.greedy = options.greedy;
  report.config.beam_width = options.decoder.beam_width;
  if (scorer != nullptr) {
    report.config.scorer_id = FingerprintHex(scorer->alphabet_fingerprint);
    report.config.alpha = options.decoder.alpha.value_or(scorer->default_alpha);
    report.config.beta = options.decoder.beta.value_or(scorer->default_beta);
    report.scorer_load_seconds = scorer->load_seconds;
  }

  const size_t n = manifest.rows.size();
  std::vector<UtteranceResult> results(n);

  auto decode_row = [&](size_t i) {
    const ManifestRow& row = manifest.rows[i];
    UtteranceResult& out = results[i];
    out.id = row.audio_ref;
    out.reference = row.transcript;
    auto start = std::chrono::steady_clock::now();
    try {
      LogitMatrix logits =
          LogitMatrix::ReadFile(JoinPath(options.logit_dir, row.audio_ref));
      out.audio_seconds = row.duration_seconds.value_or(logits.audio_seconds());
      if (options.greedy) {
        out.hypothesis = GreedyDecode(logits, alphabet);
      } else {
        auto ranked = BeamDecode(logits, alphabet, scorer, options.decoder);
        out.hypothesis = ranked.empty() ? std::string() : ranked.front().text;
      }
      auto [word_counts, ref_words] = WordEdits(out.reference, out.hypothesis);
      auto [char_counts, ref_chars] =
          CharEdits(out.reference, out.hypothesis, options.cer_count_spaces);
      out.word_edits = word_counts.distance;
      out.word_count = ref_words;
      out.char_edits = char_counts.distance;
      out.char_count = ref_chars;
    } catch (const Error& e) {
      out.failed = true;
      out.error = std::string(e.code()) + ": " + e.what();
    }
    out.decode_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  };

  auto wall_start = std::chrono::steady_clock::now();
  if (options.workers == 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) decode_row(i);
  } else {
    std::atomic<size_t> cursor{0};
    std::vector<std::thread> pool;
    int threads = std::min<size_t>(options.workers, n);
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        while (true) {
          size_t i = cursor.fetch_add(1);
          if (i >= n) return;
          decode_row(i);
        }
      });
    }
    for (auto& thread : pool) thread.join();
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    wall_start)
          .count();

  std::sort(results.begin(), results.end(),
            [](const UtteranceResult& a, const UtteranceResult& b) {
              return a.id < b.id;
            });
  for (const auto& result : results) {
    if (result.failed) {
      ++report.failed_utterances;
      continue;
    }
    report.total_word_edits += result.word_edits;
    report.total_words += result.word_count;
    report.total_char_edits += result.char_edits;
    report.total_chars += result.char_count;
    report.total_audio_seconds += result.audio_seconds;
  }
  report.utterances = std::move(results);
  if (report.total_words == 0) {
    throw EmptyReferenceError(
        "corpus WER undefined: no reference words decoded successfully");
  }
  report.corpus_wer = 100.0 * static_cast<double>(report.total_word_edits) /
                      static_cast<double>(report.total_words);
  report.corpus_cer = 100.0 * static_cast<double>(report.total_char_edits) /
                      static_cast<double>(report.total_chars);
  return report;
}

void WriteEvalTable(const EvalReport& report, std::ostream& out) {
  out << "configuration: "
      << (report.config.label.empty() ? "(unnamed)" : report.config.label)
      << "\n";
  if (!report.config.scorer_id.empty()) {
    out << "scorer: " << report.config.scorer_id
        << "  alpha: " << report.config.alpha
        << "  beta: " << report.config.beta << "\n";
  }
  out << "decode: "
      << (report.config.greedy
              ? std::string("greedy")
              : "beam " + std::to_string(report.config.beam_width))
      << "  workers: " << report.worker_count << "\n";
  out << "utterances: " << report.utterances.size()
      << "  failed: " << report.failed_utterances << "\n";
  char line[160];
  std::snprintf(line, sizeof(line),
                "WER: %.2f%%  (%llu edits / %llu words, micro average)\n",
                report.corpus_wer,
                static_cast<unsigned long long>(report.total_word_edits),
                static_cast<unsigned long long>(report.total_words));
  out << line;
  std::snprintf(line, sizeof(line),
                "CER: %.2f%%  (%llu edits / %llu chars, micro average)\n",
                report.corpus_cer,
                static_cast<unsigned long long>(report.total_char_edits),
                static_cast<unsigned long long>(report.total_chars));
  out << line;
  std::snprintf(line, sizeof(line),
                "audio: %.2f s  wall: %.2f s  scorer load: %.4f s\n",
                report.total_audio_seconds, report.wall_seconds,
                report.scorer_load_seconds);
  out << line;
}

}  // namespace stt
