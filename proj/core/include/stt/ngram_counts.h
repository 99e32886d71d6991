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

#ifndef STT_NGRAM_COUNTS_H_
#define STT_NGRAM_COUNTS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stt {

inline constexpr const char* kSentenceStart = "<s>";
inline constexpr const char* kSentenceEnd = "</s>";
inline constexpr const char* kUnknown = "<unk>";

/// Interned token ids shared by count tables and models. Ids are assigned
/// in first-seen order.
class TokenTable {
 public:
  uint32_t Intern(std::string_view token);
  /// Returns the id or -1 when the token was never interned.
  int64_t Find(std::string_view token) const;
  const std::string& Token(uint32_t id) const { return tokens_[id]; }
  uint32_t size() const { return static_cast<uint32_t>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, uint32_t> ids_;
};

using TokenIds = std::vector<uint32_t>;

struct TokenIdsHash {
  size_t operator()(const TokenIds& ids) const {
    // FNV-1a over the id words.
    uint64_t h = 1469598103934665603ull;
    for (uint32_t id : ids) {
      h = (h ^ id) * 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

template <typename V>
using NGramMap = std::unordered_map<TokenIds, V, TokenIdsHash>;

/// Raw n-gram occurrence counts for every order 1..order. Each corpus line
/// is counted as <s> w1 ... wn </s>; <s> never enters the unigram table.
class NGramCounts {
 public:
  explicit NGramCounts(int order);

  /// Counts one whitespace-tokenized line. Empty lines are skipped.
  void AddLine(std::string_view line);
  /// Streams lines from `in`. Throws EmptyCorpusError when nothing was
  /// counted and `require_nonempty` is set.
  void AddStream(std::istream& in);

  /// Commutative merge for sharded counting.
  void Merge(const NGramCounts& other);

  int order() const { return order_; }
  uint64_t total_tokens() const { return total_tokens_; }
  uint64_t line_count() const { return line_count_; }

  const NGramMap<uint64_t>& table(int k) const { return tables_[k - 1]; }
  const TokenTable& vocab() const { return vocab_; }
  TokenTable& vocab() { return vocab_; }

  uint64_t Count(int k, const TokenIds& key) const;

  uint32_t bos_id() const { return bos_id_; }
  uint32_t eos_id() const { return eos_id_; }

  void WriteBinary(std::ostream& out) const;
  static NGramCounts ReadBinary(std::istream& in);

 private:
  int order_;
  TokenTable vocab_;
  uint32_t bos_id_;
  uint32_t eos_id_;
  std::vector<NGramMap<uint64_t>> tables_;
  uint64_t total_tokens_ = 0;
  uint64_t line_count_ = 0;
};

/// Convenience wrapper used by `lm count` / `lm train`: counts a whole
/// stream and throws EmptyCorpusError when no non-empty line exists.
NGramCounts CountNGrams(std::istream& in, int order);

std::vector<std::string> SplitTokens(std::string_view line);

}  // namespace stt

#endif  // STT_NGRAM_COUNTS_H_
