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

#include "stt/csv.h"

#include "stt/error.h"

namespace stt {

std::optional<std::vector<std::string>> CsvReader::ReadRecord() {
  if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;
  record_start_line_ = current_line_;

  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;

  int ci;
  while ((ci = in_.get()) != std::char_traits<char>::eof()) {
    char c = static_cast<char>(ci);
    if (c == '\n') ++current_line_;
    if (in_quotes) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty() || field_was_quoted) {
        throw ManifestParseError(current_line_,
                                 "unexpected quote inside unquoted field");
      }
      in_quotes = true;
      field_was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else if (c == '\r') {
      // swallowed; significant only as part of CRLF
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return fields;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) {
    throw ManifestParseError(record_start_line_, "unterminated quoted field");
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string CsvEscape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteCsvRecord(std::ostream& out,
                    const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << CsvEscape(fields[i]);
  }
  out.put('\n');
}

}  // namespace stt
