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

#include "stt/alphabet.h"

#include <fstream>
#include <sstream>

#include "stt/crc64.h"
#include "stt/error.h"
#include "stt/utf8.h"

namespace stt {

Alphabet::Alphabet(std::vector<char32_t> labels) : labels_(std::move(labels)) {
  for (size_t i = 0; i < labels_.size(); ++i) {
    char32_t cp = labels_[i];
    if (!index_.emplace(cp, static_cast<int>(i)).second) {
      throw InvalidArgumentError("duplicate alphabet label " +
                                 CodepointName(cp));
    }
    if (cp == U' ') space_index_ = static_cast<int>(i);
  }
  if (space_index_ < 0) {
    throw InvalidArgumentError("alphabet has no word separator (space) label");
  }
  fingerprint_ = Crc64Of(ToText());
}

Alphabet Alphabet::FromText(const std::string& file_bytes) {
  std::vector<char32_t> labels;
  std::string body = file_bytes;
  if (body.rfind("\xEF\xBB\xBF", 0) == 0) body.erase(0, 3);  // UTF-8 BOM
  std::istringstream in(body);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<char32_t> cps = Utf8Decode(line);
    if (cps.size() != 1) {
      throw InvalidArgumentError(
          "alphabet line " + std::to_string(line_no) +
          " must hold exactly one grapheme, got " + std::to_string(cps.size()));
    }
    labels.push_back(cps[0]);
  }
  Alphabet alphabet(std::move(labels));
  alphabet.fingerprint_ = Crc64Of(file_bytes);
  return alphabet;
}

Alphabet Alphabet::FromFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open alphabet file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromText(buf.str());
}

int Alphabet::IndexOf(char32_t cp) const {
  auto it = index_.find(cp);
  return it == index_.end() ? -1 : it->second;
}

std::string Alphabet::LabelString(int index) const {
  return Utf8Encode(labels_[index]);
}

std::string Alphabet::Decode(const std::vector<int>& indices) const {
  std::string out;
  for (int idx : indices) {
    if (idx < 0 || idx >= size()) {
      throw InvalidArgumentError("label index out of range: " +
                                 std::to_string(idx));
    }
    Utf8Append(&out, labels_[idx]);
  }
  return out;
}

std::vector<int> Alphabet::Encode(const std::string& text) const {
  std::vector<char32_t> cps = Utf8Decode(text);
  std::vector<int> out;
  out.reserve(cps.size());
  std::vector<std::pair<size_t, char32_t>> offenders;
  for (size_t i = 0; i < cps.size(); ++i) {
    int idx = IndexOf(cps[i]);
    if (idx < 0) {
      offenders.emplace_back(i, cps[i]);
    } else {
      out.push_back(idx);
    }
  }
  if (!offenders.empty()) {
    std::string msg = "text contains non-alphabet scalars:";
    for (const auto& [pos, cp] : offenders) {
      msg += " " + CodepointName(cp) + "@" + std::to_string(pos);
    }
    throw UnmappableCharacterError(msg, std::move(offenders));
  }
  return out;
}

std::string Alphabet::ToText() const {
  std::string out;
  for (char32_t cp : labels_) {
    Utf8Append(&out, cp);
    out.push_back('\n');
  }
  return out;
}

}  // namespace stt
