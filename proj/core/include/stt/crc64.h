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

#ifndef STT_CRC64_H_
#define STT_CRC64_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace stt {

/// CRC-64/XZ (reflected ECMA-182 polynomial, init and xorout all-ones).
/// Check value: Crc64("123456789") == 0x995DC9BBDF1939FA.
class Crc64 {
 public:
  void Update(const void* data, size_t size);
  uint64_t Value() const { return state_ ^ 0xFFFFFFFFFFFFFFFFull; }

 private:
  uint64_t state_ = 0xFFFFFFFFFFFFFFFFull;
};

uint64_t Crc64Of(std::string_view bytes);

}  // namespace stt

#endif  // STT_CRC64_H_
