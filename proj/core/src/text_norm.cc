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

#include "stt/text_norm.h"

#include <fstream>
#include <sstream>

#include "stt/error.h"
#include "stt/utf8.h"

namespace stt {
namespace {

char32_t ParseHexScalar(const std::string& token, size_t line_no) {
  std::string hex = token;
  if (hex.rfind("U+", 0) == 0 || hex.rfind("u+", 0) == 0) hex = hex.substr(2);
  if (hex.empty() || hex.size() > 6) {
    throw InvalidArgumentError("rules line " + std::to_string(line_no) +
                               ": bad scalar '" + token + "'");
  }
  char32_t value = 0;
  for (char c : hex) {
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else {
      throw InvalidArgumentError("rules line " + std::to_string(line_no) +
                                 ": bad scalar '" + token + "'");
    }
    value = value * 16 + static_cast<char32_t>(digit);
  }
  return value;
}

bool ParseBool(const std::string& token, size_t line_no) {
  if (token == "true") return true;
  if (token == "false") return false;
  throw InvalidArgumentError("rules line " + std::to_string(line_no) +
                             ": expected true|false, got '" + token + "'");
}

}  // namespace

NormalizationRules NormalizationRules::FromText(const std::string& file_bytes) {
  NormalizationRules rules;
  rules.confusable_map.clear();
  rules.strip_set.clear();
  std::string body = file_bytes;
  if (body.rfind("\xEF\xBB\xBF", 0) == 0) body.erase(0, 3);  // UTF-8 BOM
  std::istringstream in(body);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string a, b;
    fields >> a >> b;
    if (a == "case_fold") {
      rules.case_fold = ParseBool(b, line_no);
    } else if (a == "collapse_whitespace") {
      rules.collapse_whitespace = ParseBool(b, line_no);
    } else if (a == "strip") {
      rules.strip_set.insert(ParseHexScalar(b, line_no));
    } else {
      if (b.empty()) {
        throw InvalidArgumentError("rules line " + std::to_string(line_no) +
                                   ": expected SOURCE_HEX<TAB>TARGET_HEX");
      }
      rules.confusable_map[ParseHexScalar(a, line_no)] =
          ParseHexScalar(b, line_no);
    }
  }
  return rules;
}

NormalizationRules NormalizationRules::FromFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open rules file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromText(buf.str());
}

NormalizationRules NormalizationRules::Defaults() {
  NormalizationRules rules;
  rules.case_fold = true;
  rules.collapse_whitespace = true;
  // Latin and Extended-Latin scalars that shadow Cyrillic letter shapes.
  rules.confusable_map = {
      {0x0259, 0x04D9},  // ə -> ә
      {U'a', 0x0430}, {U'c', 0x0441}, {U'e', 0x0435}, {U'h', 0x04BB},
      {U'i', 0x0456}, {U'k', 0x043A}, {U'm', 0x043C}, {U'o', 0x043E},
      {U'p', 0x0440}, {U'x', 0x0445}, {U'y', 0x0443},
  };
  static constexpr char32_t kStripped[] = {
      U'!', U'"', U'#', U'$', U'%', U'&', U'\'', U'(', U')', U'*', U'+',
      U',', U'-', U'.', U'/', U':', U';', U'<',  U'=', U'>', U'?', U'@',
      U'[', U'\\', U']', U'^', U'_', U'`', U'{', U'|', U'}', U'~',
      0x00A1, 0x00AB, 0x00BB, 0x00BF, 0x00B7, 0x00B0, 0x00A7,
      0x2010, 0x2011, 0x2012, 0x2013, 0x2014, 0x2015, 0x2018, 0x2019,
      0x201A, 0x201C, 0x201D, 0x201E, 0x2022, 0x2026, 0x2032, 0x2033,
      0x2039, 0x203A, 0x2116, 0x20B8, 0x02BC,
  };
  for (char32_t cp : kStripped) rules.strip_set.insert(cp);
  return rules;
}

void NormalizationRules::Validate(const Alphabet& alphabet) const {
  for (const auto& [src, dst] : confusable_map) {
    if (!alphabet.Contains(dst) && !IsWhitespace(dst)) {
      throw InvalidArgumentError("confusable target " + CodepointName(dst) +
                                 " is neither an alphabet label nor whitespace");
    }
    if (confusable_map.count(dst)) {
      throw InvalidArgumentError("confusable map is cyclic: target " +
                                 CodepointName(dst) + " is also a source");
    }
  }
  for (char32_t cp : strip_set) {
    if (alphabet.Contains(cp)) {
      throw InvalidArgumentError("strip set removes alphabet label " +
                                 CodepointName(cp));
    }
  }
}

std::string NormalizeText(const std::string& raw,
                          const NormalizationRules& rules,
                          const Alphabet& alphabet) {
  std::vector<char32_t> cps = Utf8Decode(raw);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  std::vector<std::pair<size_t, char32_t>> offenders;
  bool pending_space = false;

  for (size_t i = 0; i < cps.size(); ++i) {
    char32_t c = rules.case_fold ? FoldCase(cps[i]) : cps[i];
    auto mapped = rules.confusable_map.find(c);
    if (mapped != rules.confusable_map.end()) c = mapped->second;
    if (IsWhitespace(c)) {
      if (rules.collapse_whitespace) {
        pending_space = true;
      } else if (!out.empty()) {
        out.push_back(U' ');
      }
      continue;
    }
    if (rules.strip_set.count(c)) continue;
    if (!alphabet.Contains(c)) {
      offenders.emplace_back(i, cps[i]);
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  while (!out.empty() && out.back() == U' ') out.pop_back();

  if (!offenders.empty()) {
    std::string msg = "unmappable scalars:";
    for (const auto& [pos, cp] : offenders) {
      msg += " " + CodepointName(cp) + "@" + std::to_string(pos);
    }
    throw UnmappableCharacterError(msg, std::move(offenders));
  }
  return Utf8Encode(out);
}

std::vector<std::string> SegmentSentences(const std::string& raw) {
  std::vector<char32_t> cps = Utf8Decode(raw);
  auto is_final_punct = [](char32_t c) {
    return c == U'.' || c == U'!' || c == U'?' || c == 0x2026;
  };
  auto trim_piece = [&](size_t begin, size_t end) -> std::string {
    while (begin < end && IsWhitespace(cps[begin])) ++begin;
    while (end > begin && IsWhitespace(cps[end - 1])) --end;
    std::string piece;
    for (size_t k = begin; k < end; ++k) Utf8Append(&piece, cps[k]);
    return piece;
  };

  std::vector<std::string> sentences;
  size_t start = 0;
  size_t i = 0;
  while (i < cps.size()) {
    if (!is_final_punct(cps[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < cps.size() && is_final_punct(cps[j + 1])) ++j;
    if (j + 1 == cps.size() || IsWhitespace(cps[j + 1])) {
      std::string piece = trim_piece(start, j + 1);
      if (!piece.empty()) sentences.push_back(std::move(piece));
      i = j + 1;
      while (i < cps.size() && IsWhitespace(cps[i])) ++i;
      start = i;
    } else {
      i = j + 1;
    }
  }
  if (start < cps.size()) {
    std::string piece = trim_piece(start, cps.size());
    if (!piece.empty()) sentences.push_back(std::move(piece));
  }
  return sentences;
}

}  // namespace stt
