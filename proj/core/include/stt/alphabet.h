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

#ifndef STT_ALPHABET_H_
#define STT_ALPHABET_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace stt {

/// Ordered grapheme set defining CTC label indices. Exactly one label is the
/// word separator (space). The blank class is not a label; its index is
/// always `size()`, the last CTC class.
class Alphabet {
 public:
  /// Builds from single-scalar labels. Throws InvalidArgumentError on
  /// duplicates or when the separator count is not exactly one.
  explicit Alphabet(std::vector<char32_t> labels);

  /// Parses the alphabet file format: UTF-8, one grapheme per line,
  /// '#'-prefixed comments ignored, a line holding a single space denotes
  /// the separator. Line order defines label indices.
  static Alphabet FromText(const std::string& file_bytes);
  static Alphabet FromFile(const std::string& path);

  int size() const { return static_cast<int>(labels_.size()); }
  int blank_index() const { return size(); }
  int space_index() const { return space_index_; }
  /// Number of decoder classes, |labels| + blank.
  int num_classes() const { return size() + 1; }

  char32_t label(int index) const { return labels_[index]; }
  const std::vector<char32_t>& labels() const { return labels_; }

  bool Contains(char32_t cp) const { return index_.count(cp) != 0; }
  /// Returns the label index, or -1 when the scalar is not a label.
  int IndexOf(char32_t cp) const;

  std::string LabelString(int index) const;
  /// Maps a label index sequence to UTF-8 text.
  std::string Decode(const std::vector<int>& indices) const;
  /// Maps text to label indices. Throws UnmappableCharacterError when a
  /// scalar is not a label.
  std::vector<int> Encode(const std::string& text) const;

  /// CRC-64 of the source file bytes; scorers embed it so decoders can warn
  /// about alphabet mismatches. Synthetic alphabets hash their canonical
  /// file serialization.
  uint64_t fingerprint() const { return fingerprint_; }

  /// The canonical file serialization (one label per line).
  std::string ToText() const;

 private:
  std::vector<char32_t> labels_;
  std::unordered_map<char32_t, int> index_;
  int space_index_ = -1;
  uint64_t fingerprint_ = 0;
};

}  // namespace stt

#endif  // STT_ALPHABET_H_
