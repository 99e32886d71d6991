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

#ifndef STT_CSV_H_
#define STT_CSV_H_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace stt {

/// Minimal RFC-4180-style CSV: comma separated, fields may be quoted with
/// `"`, embedded quotes doubled, quoted fields may span lines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Reads one record. Returns std::nullopt at end of input. Throws
  /// ManifestParseError on an unterminated quote or a bare quote inside an
  /// unquoted field. `line()` is the 1-based line the record started on.
  std::optional<std::vector<std::string>> ReadRecord();

  size_t line() const { return record_start_line_; }

 private:
  std::istream& in_;
  size_t current_line_ = 1;
  size_t record_start_line_ = 1;
  bool at_line_start_ = true;
};

std::string CsvEscape(const std::string& field);
void WriteCsvRecord(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace stt

#endif  // STT_CSV_H_
