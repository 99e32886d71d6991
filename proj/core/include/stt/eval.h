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

#ifndef STT_EVAL_H_
#define STT_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stt/alphabet.h"
#include "stt/ctc_decoder.h"
#include "stt/manifest.h"
#include "stt/scorer.h"

namespace stt {

/// Reads the evaluation manifest variant with header
/// `logit_filename,audio_seconds,transcript` (audio_seconds optional per
/// row). audio_ref carries the logit filename.
CorpusManifest ReadEvalManifest(std::istream& in);
CorpusManifest ReadEvalManifestFile(const std::string& path);

struct EvalOptions {
  DecoderConfig decoder;
  /// Decode with per-frame argmax instead of beam search.
  bool greedy = false;
  int workers = 1;
  bool cer_count_spaces = true;
  /// Base directory for relative logit paths.
  std::string logit_dir;
  /// Configuration label echoed into reports ("acoustic-only", ...).
  std::string label;
};

struct UtteranceResult {
  std::string id;  // logit filename
  std::string reference;
  std::string hypothesis;
  uint64_t word_edits = 0;
  uint64_t word_count = 0;
  uint64_t char_edits = 0;
  uint64_t char_count = 0;
  double decode_seconds = 0.0;
  double audio_seconds = 0.0;
  bool failed = false;
  std::string error;
};

struct EvalConfigEcho {
  std::string label;
  std::string scorer_id;  // fingerprint in hex, empty without a scorer
  double alpha = 0.0;
  double beta = 0.0;
  int beam_width = 0;
  bool greedy = false;
  bool micro_average = true;
};

struct EvalReport {
  EvalConfigEcho config;
  std::vector<UtteranceResult> utterances;  // sorted by id
  uint64_t total_word_edits = 0;
  uint64_t total_words = 0;
  uint64_t total_char_edits = 0;
  uint64_t total_chars = 0;
  /// Micro averages: 100 * total edits / total reference length.
  double corpus_wer = 0.0;
  double corpus_cer = 0.0;
  double total_audio_seconds = 0.0;
  double wall_seconds = 0.0;         // decoding only (includes logit reads)
  double scorer_load_seconds = 0.0;  // reported separately, never in wall
  int worker_count = 1;
  uint64_t failed_utterances = 0;
};

/// Decodes every manifest row and aggregates micro-averaged WER/CER.
/// Per-utterance Io failures are collected, not fatal. Output is
/// deterministic regardless of worker scheduling (timing fields aside).
EvalReport Evaluate(const CorpusManifest& manifest, const Alphabet& alphabet,
                    const Scorer* scorer, const EvalOptions& options);

/// The human-readable table.
void WriteEvalTable(const EvalReport& report, std::ostream& out);

}  // namespace stt

#endif  // STT_EVAL_H_
