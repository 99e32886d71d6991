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

#ifndef STT_UTF8_H_
#define STT_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace stt {

/// Decodes UTF-8 into unicode scalar values. Throws InvalidArgumentError on
/// malformed sequences (truncated, overlong, surrogate, > U+10FFFF).
std::vector<char32_t> Utf8Decode(std::string_view text);

void Utf8Append(std::string* out, char32_t cp);
std::string Utf8Encode(const std::vector<char32_t>& codepoints);
std::string Utf8Encode(char32_t cp);

/// Simple one-to-one lowercase fold covering ASCII, Latin-1, Latin
/// Extended-A/B letters that shadow Cyrillic shapes, and the full Cyrillic
/// blocks (U+0400-U+052F). Codepoints outside the covered ranges are
/// returned unchanged.
char32_t FoldCase(char32_t cp);

bool IsWhitespace(char32_t cp);

/// "U+04D9"-style rendering for diagnostics.
std::string CodepointName(char32_t cp);

}  // namespace stt

#endif  // STT_UTF8_H_
