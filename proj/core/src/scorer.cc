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

#include "stt/scorer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>

#include "stt/crc64.h"
#include "stt/error.h"

namespace stt {
namespace {

constexpr char kMagic[8] = {'S', 'C', 'O', 'R', '1', 0, 0, 0};
constexpr uint16_t kVersion = 1;

void PutBytes(std::string* out, const void* data, size_t size) {
  out->append(static_cast<const char*>(data), size);
}

template <typename T>
void PutLe(std::string* out, T value) {
  static_assert(std::is_arithmetic_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
#if defined(__BYTE_ORDER__) && __BYTE_ORDER__ == __ORDER_BIG_ENDIAN__
  std::reverse(bytes, bytes + sizeof(T));
#endif
  PutBytes(out, bytes, sizeof(T));
}

/// Bounds-checked cursor over the file image; every read may throw
/// FormatError("truncated").
class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  size_t offset() const { return offset_; }
  size_t remaining() const { return bytes_.size() - offset_; }

  const char* Take(size_t size) {
    if (size > remaining()) {
      throw FormatError("truncated",
                        "scorer file truncated at byte " +
                            std::to_string(offset_) + " (need " +
                            std::to_string(size) + " more)");
    }
    const char* ptr = bytes_.data() + offset_;
    offset_ += size;
    return ptr;
  }

  template <typename T>
  T ReadLe() {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, Take(sizeof(T)), sizeof(T));
#if defined(__BYTE_ORDER__) && __BYTE_ORDER__ == __ORDER_BIG_ENDIAN__
    std::reverse(bytes, bytes + sizeof(T));
#endif
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
  }

 private:
  const std::string& bytes_;
  size_t offset_ = 0;
};

}  // namespace

ScorerSummary BuildScorer(const NGramModel& model, double alpha, double beta,
                          const Alphabet& alphabet, const std::string& path) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidWeightsError("alpha and beta must be finite");
  }

  std::string out;
  PutBytes(&out, kMagic, sizeof(kMagic));
  PutLe<uint16_t>(&out, kVersion);
  PutLe<double>(&out, alpha);
  PutLe<double>(&out, beta);
  PutLe<uint64_t>(&out, alphabet.fingerprint());
  PutLe<uint8_t>(&out, static_cast<uint8_t>(model.order()));

  ScorerSummary summary;
  summary.alpha = alpha;
  summary.beta = beta;
  summary.alphabet_fingerprint = alphabet.fingerprint();
  for (int k = 1; k <= model.order(); ++k) {
    summary.entry_counts.push_back(model.EntryCount(k));
    PutLe<uint64_t>(&out, model.EntryCount(k));
  }

  const auto& tokens = model.vocab().tokens();
  summary.vocabulary_size = static_cast<uint32_t>(tokens.size());
  PutLe<uint32_t>(&out, static_cast<uint32_t>(tokens.size()));
  for (const auto& token : tokens) {
    PutLe<uint32_t>(&out, static_cast<uint32_t>(token.size()));
    PutBytes(&out, token.data(), token.size());
  }

  for (int k = 1; k <= model.order(); ++k) {
    std::vector<const std::pair<const TokenIds, NGramEntry>*> entries;
    entries.reserve(model.table(k).size());
    for (const auto& item : model.table(k)) entries.push_back(&item);
    std::sort(entries.begin(), entries.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    const bool highest = k == model.order();
    for (const auto* item : entries) {
      for (uint32_t id : item->first) PutLe<uint32_t>(&out, id);
      PutLe<float>(&out, static_cast<float>(item->second.log10_prob));
      if (!highest) {
        PutLe<float>(&out, static_cast<float>(item->second.log10_backoff));
      }
    }
  }

  PutLe<uint64_t>(&out, Crc64Of(out));

  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write scorer: " + path);
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("failed writing scorer: " + path);
  summary.file_bytes = out.size();
  return summary;
}

Scorer ParseScorer(const std::string& bytes) {
  Reader reader(bytes);

  const char* magic = reader.Take(sizeof(kMagic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("bad_magic", "not a SCOR1 scorer file");
  }
  uint16_t version = reader.ReadLe<uint16_t>();
  if (version != kVersion) {
    throw FormatError("unsupported_version",
                      "unsupported scorer version " + std::to_string(version));
  }
  double alpha = reader.ReadLe<double>();
  double beta = reader.ReadLe<double>();
  uint64_t fingerprint = reader.ReadLe<uint64_t>();
  int order = reader.ReadLe<uint8_t>();
  if (order < 1) {
    throw FormatError("truncated", "scorer declares order 0");
  }

  std::vector<uint64_t> entry_counts;
  for (int k = 1; k <= order; ++k) {
    entry_counts.push_back(reader.ReadLe<uint64_t>());
  }

  uint32_t vocab_count = reader.ReadLe<uint32_t>();
  TokenTable vocab;
  for (uint32_t i = 0; i < vocab_count; ++i) {
    uint32_t len = reader.ReadLe<uint32_t>();
    const char* data = reader.Take(len);
    vocab.Intern(std::string_view(data, len));
  }
  if (vocab.size() != vocab_count) {
    throw FormatError("checksum_mismatch", "duplicate vocabulary token");
  }

  std::vector<NGramMap<NGramEntry>> tables(order);
  for (int k = 1; k <= order; ++k) {
    const bool highest = k == order;
    const size_t entry_bytes =
        sizeof(uint32_t) * static_cast<size_t>(k) + sizeof(float) * (highest ? 1 : 2);
    uint64_t count = entry_counts[k - 1];
    if (count > reader.remaining() / entry_bytes + 1) {
      throw FormatError("truncated",
                        "scorer entry table exceeds file size at order " +
                            std::to_string(k));
    }
    auto& table = tables[k - 1];
    table.reserve(static_cast<size_t>(count));
    for (uint64_t e = 0; e < count; ++e) {
      TokenIds key(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) {
        key[i] = reader.ReadLe<uint32_t>();
        if (key[i] >= vocab_count) {
          throw FormatError("checksum_mismatch",
                            "token id out of range at order " +
                                std::to_string(k));
        }
      }
      NGramEntry entry;
      entry.log10_prob = reader.ReadLe<float>();
      entry.log10_backoff = highest ? 0.0 : reader.ReadLe<float>();
      if (!table.emplace(std::move(key), entry).second) {
        throw FormatError("checksum_mismatch",
                          "duplicate n-gram entry at order " +
                              std::to_string(k));
      }
    }
  }

  size_t checksum_offset = reader.offset();
  uint64_t stored_crc = reader.ReadLe<uint64_t>();
  if (reader.remaining() != 0) {
    throw FormatError("checksum_mismatch",
                      "unexpected trailing bytes after checksum");
  }
  uint64_t actual_crc =
      Crc64Of(std::string_view(bytes.data(), checksum_offset));
  if (actual_crc != stored_crc) {
    throw FormatError("checksum_mismatch", "scorer checksum mismatch");
  }

  Scorer scorer{NGramModel(order, std::move(vocab), std::move(tables)),
                alpha, beta, fingerprint, "", 0.0};
  return scorer;
}

Scorer LoadScorer(const std::string& path) {
  auto start = std::chrono::steady_clock::now();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scorer: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  Scorer scorer = ParseScorer(bytes);
  scorer.load_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return scorer;
}

}  // namespace stt
