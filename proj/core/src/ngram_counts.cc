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

#include "stt/ngram_counts.h"

#include <cctype>
#include <cstring>
#include <istream>
#include <ostream>

#include "stt/error.h"

namespace stt {
namespace {

constexpr char kCountsMagic[8] = {'C', 'N', 'T', 'S', '1', 0, 0, 0};

template <typename T>
void WritePod(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(value));
}

template <typename T>
T ReadPod(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(value))) {
    throw FormatError("truncated", "truncated counts file");
  }
  return value;
}

}  // namespace

uint32_t TokenTable::Intern(std::string_view token) {
  auto it = ids_.find(std::string(token));
  if (it != ids_.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(tokens_.back(), id);
  return id;
}

int64_t TokenTable::Find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? -1 : static_cast<int64_t>(it->second);
}

std::vector<std::string> SplitTokens(std::string_view line) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

NGramCounts::NGramCounts(int order) : order_(order) {
  if (order < 1) throw InvalidArgumentError("order must be >= 1");
  bos_id_ = vocab_.Intern(kSentenceStart);
  eos_id_ = vocab_.Intern(kSentenceEnd);
  tables_.resize(order_);
}

void NGramCounts::AddLine(std::string_view line) {
  std::vector<std::string> tokens = SplitTokens(line);
  if (tokens.empty()) return;

  TokenIds padded;
  padded.reserve(tokens.size() + 2);
  padded.push_back(bos_id_);
  for (const auto& token : tokens) {
    if (token == kSentenceStart || token == kSentenceEnd || token == kUnknown) {
      throw InvalidArgumentError("reserved token '" + token +
                                 "' found in training text");
    }
    padded.push_back(vocab_.Intern(token));
  }
  padded.push_back(eos_id_);

  for (int k = 1; k <= order_; ++k) {
    auto& table = tables_[k - 1];
    for (size_t start = 0; start + k <= padded.size(); ++start) {
      // <s> is context-only: it carries no unigram mass.
      if (k == 1 && padded[start] == bos_id_) continue;
      TokenIds key(padded.begin() + start, padded.begin() + start + k);
      ++table[key];
    }
  }
  total_tokens_ += tokens.size();
  ++line_count_;
}

void NGramCounts::AddStream(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) AddLine(line);
}

void NGramCounts::Merge(const NGramCounts& other) {
  if (other.order_ != order_) {
    throw InvalidArgumentError("cannot merge counts of different order");
  }
  // Remap ids: the token tables may have diverged.
  std::vector<uint32_t> remap(other.vocab_.size());
  for (uint32_t id = 0; id < other.vocab_.size(); ++id) {
    remap[id] = vocab_.Intern(other.vocab_.Token(id));
  }
  for (int k = 1; k <= order_; ++k) {
    for (const auto& [key, count] : other.tables_[k - 1]) {
      TokenIds mapped(key.size());
      for (size_t i = 0; i < key.size(); ++i) mapped[i] = remap[key[i]];
      tables_[k - 1][mapped] += count;
    }
  }
  total_tokens_ += other.total_tokens_;
  line_count_ += other.line_count_;
}

uint64_t NGramCounts::Count(int k, const TokenIds& key) const {
  const auto& table = tables_[k - 1];
  auto it = table.find(key);
  return it == table.end() ? 0 : it->second;
}

void NGramCounts::WriteBinary(std::ostream& out) const {
  out.write(kCountsMagic, sizeof(kCountsMagic));
  WritePod<uint8_t>(out, static_cast<uint8_t>(order_));
  WritePod<uint64_t>(out, total_tokens_);
  WritePod<uint64_t>(out, line_count_);
  WritePod<uint32_t>(out, vocab_.size());
  for (const auto& token : vocab_.tokens()) {
    WritePod<uint32_t>(out, static_cast<uint32_t>(token.size()));
    out.write(token.data(), static_cast<std::streamsize>(token.size()));
  }
  for (int k = 1; k <= order_; ++k) {
    WritePod<uint64_t>(out, tables_[k - 1].size());
    for (const auto& [key, count] : tables_[k - 1]) {
      for (uint32_t id : key) WritePod<uint32_t>(out, id);
      WritePod<uint64_t>(out, count);
    }
  }
  if (!out) throw IoError("failed writing counts");
}

NGramCounts NGramCounts::ReadBinary(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kCountsMagic, sizeof(magic)) != 0) {
    throw FormatError("bad_magic", "not a counts file");
  }
  int order = ReadPod<uint8_t>(in);
  NGramCounts counts(order);
  counts.total_tokens_ = ReadPod<uint64_t>(in);
  counts.line_count_ = ReadPod<uint64_t>(in);
  uint32_t vocab_size = ReadPod<uint32_t>(in);
  counts.vocab_ = TokenTable();
  for (uint32_t i = 0; i < vocab_size; ++i) {
    uint32_t len = ReadPod<uint32_t>(in);
    std::string token(len, '\0');
    if (!in.read(token.data(), len)) {
      throw FormatError("truncated", "truncated counts vocabulary");
    }
    counts.vocab_.Intern(token);
  }
  if (counts.vocab_.Find(kSentenceStart) != 0 ||
      counts.vocab_.Find(kSentenceEnd) != 1) {
    throw FormatError("bad_magic", "counts vocabulary lacks sentence markers");
  }
  for (int k = 1; k <= order; ++k) {
    uint64_t entries = ReadPod<uint64_t>(in);
    counts.tables_[k - 1].reserve(entries);
    for (uint64_t e = 0; e < entries; ++e) {
      TokenIds key(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) {
        key[i] = ReadPod<uint32_t>(in);
        if (key[i] >= vocab_size) {
          throw FormatError("truncated", "counts entry id out of range");
        }
      }
      counts.tables_[k - 1][key] = ReadPod<uint64_t>(in);
    }
  }
  return counts;
}

NGramCounts CountNGrams(std::istream& in, int order) {
  NGramCounts counts(order);
  counts.AddStream(in);
  if (counts.line_count() == 0) {
    throw EmptyCorpusError("no non-empty line in corpus");
  }
  return counts;
}

}  // namespace stt
