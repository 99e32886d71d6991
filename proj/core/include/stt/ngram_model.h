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

#ifndef STT_NGRAM_MODEL_H_
#define STT_NGRAM_MODEL_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stt/ngram_counts.h"

namespace stt {

/// log10 probability floor; keeps <unk> and degenerate entries finite.
inline constexpr double kLog10Floor = -20.0;

struct NGramEntry {
  double log10_prob = 0.0;
  /// log10 backoff weight; 0 when the n-gram never acts as a context.
  /// Unused (always 0) at the highest order.
  double log10_backoff = 0.0;
};

/// The most recent (order-1) tokens of incremental scoring, possibly fewer
/// near the sentence start. Values are token ids of the owning model.
struct LmState {
  TokenIds context;

  bool operator==(const LmState& other) const = default;
};

struct ModelMetadata {
  /// Orders whose closed-form discounts were degenerate and fell back to
  /// absolute discounting.
  std::vector<int> fallback_orders;
  double discount_fallback = 0.5;
  uint64_t training_tokens = 0;
  uint64_t training_lines = 0;
};

/// Backoff n-gram language model over log10 probabilities. Immutable after
/// construction and safe to share across threads.
class NGramModel {
 public:
  NGramModel(int order, TokenTable vocab,
             std::vector<NGramMap<NGramEntry>> tables,
             ModelMetadata metadata = {});

  int order() const { return order_; }
  const TokenTable& vocab() const { return vocab_; }
  const ModelMetadata& metadata() const { return metadata_; }
  const NGramMap<NGramEntry>& table(int k) const { return tables_[k - 1]; }
  uint64_t EntryCount(int k) const { return tables_[k - 1].size(); }

  uint32_t bos_id() const { return bos_id_; }
  uint32_t eos_id() const { return eos_id_; }
  uint32_t unk_id() const { return unk_id_; }

  /// True for every token the model can predict (everything except <s>).
  bool IsPredictable(uint32_t id) const { return id != bos_id_; }

  /// Maps a token to its id, or the <unk> id for out-of-vocabulary tokens.
  uint32_t IdOrUnk(std::string_view token) const;
  bool InVocabulary(std::string_view token) const {
    return vocab_.Find(token) >= 0;
  }

  LmState BeginSentenceState() const;
  LmState NullContextState() const { return LmState{}; }

  /// Backoff-chain query: longest matching n-gram wins; each shortening adds
  /// the abandoned context's backoff weight. OOV tokens score as <unk>.
  /// Returns the log10 probability and the advanced state.
  std::pair<double, LmState> Query(const LmState& state,
                                   std::string_view token) const;
  std::pair<double, LmState> Query(const LmState& state, uint32_t token_id) const;

  /// log10 P(<s> w1 ... wn </s>) scored from the sentence-start state.
  double ScoreSentence(const std::vector<std::string>& tokens) const;

  const NGramEntry* FindEntry(const TokenIds& key) const;

 private:
  int order_;
  TokenTable vocab_;
  std::vector<NGramMap<NGramEntry>> tables_;
  ModelMetadata metadata_;
  uint32_t bos_id_;
  uint32_t eos_id_;
  uint32_t unk_id_;
  double unk_log10_;
};

struct PerplexityResult {
  double perplexity = 0.0;
  double total_log10 = 0.0;
  uint64_t events = 0;  // scored tokens including </s>
};

/// 10^(-sum/N) over every non-empty line. Throws EmptyCorpusError when no
/// event was scored.
PerplexityResult Perplexity(const NGramModel& model, std::istream& lines);

}  // namespace stt

#endif  // STT_NGRAM_MODEL_H_
