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

#include "stt/ngram_model.h"

#include <cmath>
#include <istream>

#include "stt/error.h"

namespace stt {

NGramModel::NGramModel(int order, TokenTable vocab,
                       std::vector<NGramMap<NGramEntry>> tables,
                       ModelMetadata metadata)
    : order_(order),
      vocab_(std::move(vocab)),
      tables_(std::move(tables)),
      metadata_(std::move(metadata)) {
  if (order_ < 1) throw InvalidArgumentError("model order must be >= 1");
  if (tables_.size() != static_cast<size_t>(order_)) {
    throw InvalidArgumentError("model tables do not match order");
  }
  int64_t bos = vocab_.Find(kSentenceStart);
  int64_t eos = vocab_.Find(kSentenceEnd);
  int64_t unk = vocab_.Find(kUnknown);
  if (bos < 0 || eos < 0 || unk < 0) {
    throw InvalidArgumentError("model vocabulary must contain <s>, </s>, <unk>");
  }
  bos_id_ = static_cast<uint32_t>(bos);
  eos_id_ = static_cast<uint32_t>(eos);
  unk_id_ = static_cast<uint32_t>(unk);
  const NGramEntry* unk_entry = FindEntry({unk_id_});
  if (unk_entry == nullptr) {
    throw InvalidArgumentError("model lacks a <unk> unigram entry");
  }
  unk_log10_ = unk_entry->log10_prob;
}

uint32_t NGramModel::IdOrUnk(std::string_view token) const {
  int64_t id = vocab_.Find(token);
  return id < 0 ? unk_id_ : static_cast<uint32_t>(id);
}

LmState NGramModel::BeginSentenceState() const {
  LmState state;
  if (order_ > 1) state.context.push_back(bos_id_);
  return state;
}

const NGramEntry* NGramModel::FindEntry(const TokenIds& key) const {
  const auto& table = tables_[key.size() - 1];
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

std::pair<double, LmState> NGramModel::Query(const LmState& state,
                                             std::string_view token) const {
  if (token.empty()) throw InvalidArgumentError("query token is empty");
  return Query(state, IdOrUnk(token));
}

std::pair<double, LmState> NGramModel::Query(const LmState& state,
                                             uint32_t token_id) const {
  const TokenIds& ctx = state.context;
  size_t m = std::min(ctx.size(), static_cast<size_t>(order_ - 1));

  LmState next;
  if (order_ > 1) {
    next.context.assign(ctx.end() - static_cast<ptrdiff_t>(m), ctx.end());
    next.context.push_back(token_id);
    if (next.context.size() > static_cast<size_t>(order_ - 1)) {
      next.context.erase(next.context.begin());
    }
  }

  double backoff_sum = 0.0;
  TokenIds key;
  while (true) {
    key.assign(ctx.end() - static_cast<ptrdiff_t>(m), ctx.end());
    key.push_back(token_id);
    if (const NGramEntry* entry = FindEntry(key)) {
      return {entry->log10_prob + backoff_sum, std::move(next)};
    }
    if (m == 0) {
      // Unigram miss: only possible for out-of-vocabulary ids mapped to
      // <unk> by construction, or vocabularies without the token.
      return {unk_log10_ + backoff_sum, std::move(next)};
    }
    key.pop_back();  // the abandoned context
    if (const NGramEntry* context_entry = FindEntry(key)) {
      backoff_sum += context_entry->log10_backoff;
    }
    --m;
  }
}

double NGramModel::ScoreSentence(const std::vector<std::string>& tokens) const {
  LmState state = BeginSentenceState();
  double total = 0.0;
  for (const auto& token : tokens) {
    auto [log10_prob, next] = Query(state, token);
    total += log10_prob;
    state = std::move(next);
  }
  auto [eos_log10, final_state] = Query(state, eos_id_);
  (void)final_state;
  return total + eos_log10;
}

PerplexityResult Perplexity(const NGramModel& model, std::istream& lines) {
  PerplexityResult result;
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> tokens = SplitTokens(line);
    if (tokens.empty()) continue;
    result.total_log10 += model.ScoreSentence(tokens);
    result.events += tokens.size() + 1;  // words + </s>
  }
  if (result.events == 0) {
    throw EmptyCorpusError("no scored event in evaluation corpus");
  }
  result.perplexity =
      std::pow(10.0, -result.total_log10 / static_cast<double>(result.events));
  return result;
}

}  // namespace stt
