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

#ifndef STT_CTC_DECODER_H_
#define STT_CTC_DECODER_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stt/alphabet.h"
#include "stt/logits.h"
#include "stt/scorer.h"

namespace stt {

struct DecoderConfig {
  int beam_width = 256;
  /// Fusion weight overrides; require a scorer.
  std::optional<double> alpha;
  std::optional<double> beta;
  /// Skip extending labels whose frame log-prob is more than 9.21 (a
  /// probability ratio of about 1e-4) below the frame maximum. Blank and
  /// repeat updates of existing prefixes are never skipped.
  bool prune_candidates = true;
  /// Prune word completions that fall outside the scorer vocabulary
  /// instead of scoring them as <unk>.
  bool forbid_oov = false;
};

struct DecodeResult {
  std::string text;
  /// Combined score in the natural-log domain:
  /// ctc_log_prob + alpha*ln(10)*lm_log10 + beta*word_count.
  double score = 0.0;
  double ctc_log_prob = 0.0;
  double lm_log10 = 0.0;  // completed words plus </s>
  int word_count = 0;
};

/// Per-frame argmax, collapse adjacent repeats, drop blanks.
std::string GreedyDecode(const LogitMatrix& logits, const Alphabet& alphabet);

/// Frame-synchronous prefix beam search with optional shallow fusion. The
/// language model is applied at word boundaries: completing a word via the
/// separator adds alpha*ln(10)*log10 P(word|state) + beta; finalization
/// scores the trailing word the same way and then </s>. Results are ranked
/// by combined score; exact ties break toward shorter, then
/// lexicographically smaller prefixes.
std::vector<DecodeResult> BeamDecode(const LogitMatrix& logits,
                                     const Alphabet& alphabet,
                                     const Scorer* scorer,
                                     const DecoderConfig& config = {});

/// Incremental decoding over frame chunks. Feeding a matrix in any chunking
/// and finishing yields exactly the BeamDecode result for the concatenated
/// frames. A stream is owned by one caller at a time.
class DecodeStream {
 public:
  DecodeStream(const Alphabet& alphabet, const Scorer* scorer,
               const DecoderConfig& config = {});

  /// Consumes all frames of `chunk`. Throws ShapeMismatchError when the
  /// class count differs from the alphabet, UseAfterFinishError after
  /// Finish().
  void Feed(const LogitMatrix& chunk);

  /// Current best prefix (unstable; may retract as more frames arrive).
  std::string IntermediateText() const;

  /// Finalizes trailing-word and </s> fusion scores and returns the ranked
  /// hypotheses. The stream cannot be fed afterwards.
  std::vector<DecodeResult> Finish();

  uint64_t frames_consumed() const { return frames_consumed_; }
  bool finished() const { return finished_; }

 private:
  struct Hyp {
    double log_pb;   // natural-log prefix probability ending in blank
    double log_pnb;  // ... ending in non-blank
    LmState lm_state;
    double lm_log10 = 0.0;
    int word_count = 0;
  };
  using Beam = std::map<std::vector<int>, Hyp>;

  double Combined(const Hyp& hyp) const;
  /// Word-boundary fusion for appending `label` to `prefix` scored from
  /// `hyp`. Returns false when forbid_oov prunes the extension.
  bool ExtendLm(const std::vector<int>& prefix, int label, const Hyp& hyp,
                Hyp* out) const;

  const Alphabet& alphabet_;
  const Scorer* scorer_;
  DecoderConfig config_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  Beam active_;
  uint64_t frames_consumed_ = 0;
  bool finished_ = false;
};

}  // namespace stt

#endif  // STT_CTC_DECODER_H_
