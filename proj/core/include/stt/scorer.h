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

#ifndef STT_SCORER_H_
#define STT_SCORER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "stt/alphabet.h"
#include "stt/ngram_model.h"

namespace stt {

/// Packaged language model plus fusion weights, loaded from the SCOR1
/// binary format. Immutable and shareable across decoder streams.
///
/// SCOR1 layout (little-endian):
///   magic "SCOR1\0\0\0" | u16 version=1 | f64 alpha | f64 beta |
///   u64 alphabet_fingerprint | u8 order | per-order u64 entry counts |
///   vocabulary (u32 count, then u32-length-prefixed UTF-8 tokens; position
///   defines token id) | per-order entry tables sorted by token-id tuple,
///   each entry = order u32 ids + f32 log10_prob + f32 log10_backoff
///   (backoff omitted at the highest order) | u64 CRC-64 of all prior bytes.
struct Scorer {
  NGramModel model;
  double default_alpha = 0.0;
  double default_beta = 0.0;
  uint64_t alphabet_fingerprint = 0;
  /// Creation info; carried in memory only, not part of the binary layout.
  std::string metadata;
  double load_seconds = 0.0;
};

struct ScorerSummary {
  std::vector<uint64_t> entry_counts;  // per order
  uint32_t vocabulary_size = 0;
  double alpha = 0.0;
  double beta = 0.0;
  uint64_t alphabet_fingerprint = 0;
  uint64_t file_bytes = 0;
};

/// Serializes the model with its fusion weights. Alpha and beta are stored
/// as IEEE 754 binary64 and reload bit-exactly; model scores are stored as
/// f32. Throws InvalidWeightsError on non-finite alpha/beta.
ScorerSummary BuildScorer(const NGramModel& model, double alpha, double beta,
                          const Alphabet& alphabet, const std::string& path);

/// Fully validates magic, version, section lengths and the trailing
/// checksum before returning. Throws FormatError with code bad_magic,
/// unsupported_version, truncated, or checksum_mismatch.
Scorer LoadScorer(const std::string& path);

/// Parses a scorer from an in-memory byte buffer (same validation).
Scorer ParseScorer(const std::string& bytes);

}  // namespace stt

#endif  // STT_SCORER_H_
