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

#ifndef STT_LOGITS_H_
#define STT_LOGITS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "stt/alphabet.h"

namespace stt {

/// Per-frame natural-log class probabilities emitted by an acoustic model:
/// T rows by C = |alphabet| + 1 columns, blank last. Every row satisfies
/// sum(exp(row)) = 1 within 1e-4.
class LogitMatrix {
 public:
  LogitMatrix() = default;
  LogitMatrix(uint32_t frames, uint32_t classes,
              float frame_duration_seconds = 0.02f);

  uint32_t frames() const { return frames_; }
  uint32_t classes() const { return classes_; }
  float frame_duration_seconds() const { return frame_duration_; }
  double audio_seconds() const {
    return static_cast<double>(frames_) * frame_duration_;
  }

  float* Row(uint32_t t) { return data_.data() + size_t(t) * classes_; }
  const float* Row(uint32_t t) const {
    return data_.data() + size_t(t) * classes_;
  }
  float At(uint32_t t, uint32_t c) const {
    return data_[size_t(t) * classes_ + c];
  }
  void Set(uint32_t t, uint32_t c, float value) {
    data_[size_t(t) * classes_ + c] = value;
  }

  /// Throws ShapeMismatchError when any row is not log-normalized within
  /// `tolerance`.
  void CheckNormalized(double tolerance = 1e-4) const;

  /// File format (little-endian): magic "LOGITS1\0", u32 T, u32 C,
  /// f32 frame_duration_seconds, then T*C f32 row-major values.
  void WriteFile(const std::string& path) const;
  static LogitMatrix ReadFile(const std::string& path);
  static LogitMatrix Parse(const std::string& bytes);

 private:
  uint32_t frames_ = 0;
  uint32_t classes_ = 0;
  float frame_duration_ = 0.02f;
  std::vector<float> data_;
};

/// Deterministic synthetic logits for testing decoders: `frames_per_label`
/// peaked frames per label with one blank frame between repeated labels.
/// With noise 0 at least 0.99 probability sits on the target class; noise
/// perturbs log probabilities with Gaussian draws (seeded, reproducible)
/// before renormalization. Throws UnmappableCharacterError when `text` is
/// not alphabet-pure.
LogitMatrix SynthesizeLogits(const std::string& text, const Alphabet& alphabet,
                             int frames_per_label, double noise, uint64_t seed,
                             float frame_duration_seconds = 0.02f);

}  // namespace stt

#endif  // STT_LOGITS_H_
