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

#ifndef STT_ARPA_H_
#define STT_ARPA_H_

#include <iosfwd>
#include <string>

#include "stt/ngram_model.h"

namespace stt {

/// Writes the standard ARPA text form: a \data\ section declaring per-order
/// entry counts, then per-order sections of
/// `log10_prob<TAB>tokens<TAB>log10_backoff` lines (no backoff column at the
/// highest order). Entries are sorted by token-id tuple so output is
/// deterministic.
void WriteArpa(const NGramModel& model, std::ostream& out);
void WriteArpaFile(const NGramModel& model, const std::string& path);

/// Parses ARPA text. Declared counts must match actual section sizes.
/// Throws ArpaParseError(line, reason) on malformed input. Missing <unk> or
/// <s> entries are synthesized (floor / pseudo probability) with a warning.
NGramModel ReadArpa(std::istream& in);
NGramModel ReadArpaFile(const std::string& path);

}  // namespace stt

#endif  // STT_ARPA_H_
